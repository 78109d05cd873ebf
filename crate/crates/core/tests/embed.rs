use k3s::algebra::FieldSpec;
use k3s::k3::{certify, construct, embed, k3_mukai, K3Error, Level, Marking};
use k3s::lattice::DivisorClass;

fn field() -> FieldSpec {
    FieldSpec::default()
}

#[test]
fn conic_is_contracted_to_a_node() {
    let k = construct(field(), 2, 4, -2, 2).unwrap();
    let e = embed(&k, 1, 1, 2).unwrap();
    assert_eq!((e.genus, e.ambient_dim()), (5, 5));
    assert!(e.node().is_some() && e.curve().is_none());
    let cert = certify(&e, Level::Fast, 2);
    assert!(cert.passed(), "{:?}", cert.checks);
    assert_eq!(cert.check("node").unwrap().detail, "tangent space dim 3, tangent cone rank 3");
}

#[test]
fn double_twist_iterates_single_steps() {
    // L + 2E on a quartic with an elliptic quartic curve: genus 3 + 2·4
    let k = construct(field(), 4, 3, 0, 4).unwrap();
    let e = embed(&k, 1, 2, 4).unwrap();
    assert_eq!(e.genus, 11);
    assert_eq!(e.polarization, DivisorClass::new(1, 2));
    let h = e.surface.hilbert().unwrap();
    assert_eq!((h.dim, h.degree, h.sectional_genus()), (2, 20, Some(11)));
    let c = e.curve().unwrap().hilbert().unwrap();
    assert_eq!((c.dim, c.degree), (1, 4));
}

#[test]
fn multiples_of_l_keep_the_marked_curve() {
    let k = construct(field(), 1, 3, -2, 6).unwrap();
    let e = embed(&k, 2, 0, 6).unwrap();
    assert_eq!((e.genus, e.ambient_dim()), (9, 9));
    let c = e.curve().unwrap().hilbert().unwrap();
    assert_eq!((c.dim, c.degree, c.sectional_genus()), (1, 2, Some(0)));
}

#[test]
fn minus_c_through_a_node_projects() {
    let k = k3_mukai(field(), 6, Marking::Node, 3).unwrap();
    let e = embed(&k, 1, -1, 3).unwrap();
    assert_eq!((e.genus, e.ambient_dim()), (5, 5));
    assert!(certify(&e, Level::Fast, 3).passed());
}

#[test]
fn unsupported_and_rejected_coefficients() {
    let k = construct(field(), 2, 6, -2, 1).unwrap();
    assert!(matches!(embed(&k, 3, -2, 1), Err(K3Error::Unsupported(_))));
    assert!(matches!(embed(&k, 0, 1, 1), Err(K3Error::Rejected { .. })));
    let nodal = k3_mukai(field(), 6, Marking::Node, 1).unwrap();
    // (a h1 + b h2)·h2 = -2b on the node lattice, so b > 0 never passes screening
    assert!(matches!(embed(&nodal, 2, 1, 1), Err(K3Error::Rejected { .. })));
}
