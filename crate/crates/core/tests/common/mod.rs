#![allow(dead_code)]

use fairext_core::io::{gen_random, GenSpec, GenVariant};
use fairext_core::{Instance, Query};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[allow(clippy::too_many_arguments)]
/// Instances for sweep `sweep`, case `case`: parameters are drawn from a
/// generator seeded by both, so failures can be replayed by number.
pub fn random_instance(
    sweep: u64,
    case: u64,
    n_max: usize,
    m_max: usize,
    n_t_max: usize,
    m_t_max: usize,
    max_value: i64,
    variant: impl Fn(&mut ChaCha8Rng, usize) -> GenVariant,
) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(sweep.wrapping_mul(1_000_003).wrapping_add(case));
    loop {
        let n = rng.gen_range(1..=n_max);
        let m = rng.gen_range(0..=m_max);
        let n_t = rng.gen_range(1..=n.min(n_t_max));
        let m_t = if m == 0 { 0 } else { rng.gen_range(1..=m.min(m_t_max)) };
        let spec = GenSpec {
            seed: rng.gen(),
            n,
            m,
            n_t,
            m_t,
            max_value,
            open_fraction: rng.gen_range(0.0..=1.0),
            variant: variant(&mut rng, n),
        };
        if let Ok(inst) = gen_random(&spec) {
            return inst;
        }
    }
}

pub fn efae(_: &mut ChaCha8Rng, _: usize) -> GenVariant {
    GenVariant::Efae
}

pub fn recipients_variant(p_max: usize) -> impl Fn(&mut ChaCha8Rng, usize) -> GenVariant {
    move |rng, n| {
        let p = rng.gen_range(1..=n.min(p_max));
        if rng.gen_bool(0.5) {
            GenVariant::Refae { recipients: p }
        } else {
            GenVariant::Fefae { p }
        }
    }
}

/// Every instance with `n` agents, `m` items, values in `0..=v_max`, and
/// every way of pre-assigning items (or leaving them open).
pub fn all_instances(n: usize, m: usize, v_max: i64, mut visit: impl FnMut(Instance)) {
    let cells = n * m;
    let base = (v_max + 1) as usize;
    let total_vals = base.pow(cells as u32);
    let total_assign = (n + 1).pow(m as u32);
    for code in 0..total_vals {
        let mut c = code;
        let mut values = vec![vec![0i64; m]; n];
        for cell in 0..cells {
            values[cell / m][cell % m] = (c % base) as i64;
            c /= base;
        }
        for acode in 0..total_assign {
            let mut a = acode;
            let assigned: Vec<Option<usize>> = (0..m)
                .map(|_| {
                    let d = a % (n + 1);
                    a /= n + 1;
                    if d == n {
                        None
                    } else {
                        Some(d)
                    }
                })
                .collect();
            visit(Instance::from_matrix(values.clone(), assigned, Query::Efae).unwrap());
        }
    }
}
