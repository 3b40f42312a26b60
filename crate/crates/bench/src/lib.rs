//! Seeded instance families shared by the criterion benches.

use fairext_core::io::{gen_colored_graph, gen_graph, gen_random, GenSpec, GenVariant};
use fairext_core::reductions::{is_to_refae, mcq_to_efae};
use fairext_core::Instance;

/// Random EFAE instance with `k` open items and `n_t` agent types.
pub fn efae(seed: u64, n: usize, n_t: usize, k: usize) -> Instance {
    let m = 2 * k + n;
    random(GenSpec {
        seed,
        n,
        m,
        n_t,
        m_t: m.min(6),
        max_value: 9,
        open_fraction: k as f64 / m as f64,
        variant: GenVariant::Efae,
    })
}

/// Random REFAE instance with `p` recipients and `m_t` item types.
pub fn refae(seed: u64, n: usize, p: usize, m: usize, m_t: usize, max_value: i64) -> Instance {
    random(GenSpec {
        seed,
        n,
        m,
        n_t: n.min(3),
        m_t,
        max_value,
        open_fraction: 0.6,
        variant: GenVariant::Refae { recipients: p },
    })
}

/// Draws from successive seeds until the parameters are satisfiable.
fn random(spec: GenSpec) -> Instance {
    (0..)
        .find_map(|bump| {
            gen_random(&GenSpec {
                seed: spec.seed.wrapping_add(bump),
                ..spec
            })
            .ok()
        })
        .expect("some seed works")
}

/// Clique gadget over a random `q`-colored graph.
pub fn mcq_gadget(seed: u64, q: usize, max_per_color: usize) -> Instance {
    let g = gen_colored_graph(seed, q, max_per_color, 0.6).expect("valid parameters");
    mcq_to_efae(&g).expect("generator covers every color pair").instance
}

/// Independent-set gadget over a random graph on `n` vertices.
pub fn is_gadget(seed: u64, n: usize, l: usize) -> Instance {
    let g = gen_graph(seed, n, 0.4).expect("valid density");
    is_to_refae(&g, l, false).expect("1 <= l <= n").instance
}
