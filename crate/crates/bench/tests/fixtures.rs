use fairext_bench::{efae, is_gadget, mcq_gadget, refae};
use fairext_core::{compute_types, Query};

#[test]
fn families_have_requested_shape() {
    let inst = efae(1, 5, 2, 4);
    assert_eq!(inst.k(), 4);
    assert_eq!(compute_types(&inst).n_types(), 2);

    let inst = refae(2, 5, 2, 8, 3, 4);
    assert!(matches!(inst.query(), Query::Refae { recipients } if recipients.len() == 2));
    assert_eq!(compute_types(&inst).m_types(), 3);

    assert_eq!(mcq_gadget(3, 3, 2).k(), 3 + 3);
    assert_eq!(is_gadget(4, 6, 3).k(), 6);
}
