use super::*;
use crate::coeff::BaseRing;
use crate::complex::Reduction;
use crate::diagram::{parse_pd, LinkDiagram};
use crate::frobenius::{Theory, TheoryKind};

const TREFOIL: &str = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";

fn table(d: &LinkDiagram, k: TheoryKind, b: BaseRing, r: Reduction) -> Vec<(i32, i32, String)> {
    let c = CubeComplex::build(d, &Theory::new(k, b).unwrap(), r).unwrap();
    homology(&c).unwrap().module.records()
}

fn rec(v: &[(i32, i32, &str)]) -> Vec<(i32, i32, String)> {
    v.iter().map(|(i, q, o)| (*i, *q, o.to_string())).collect()
}

#[test]
fn trefoil_u1() {
    let t = parse_pd(TREFOIL).unwrap();
    let f2 = BaseRing::Prime(2);
    assert_eq!(
        table(&t, TheoryKind::U1, f2, Reduction::Unreduced),
        rec(&[(-2, 5, "h"), (-2, 7, "h"), (0, 1, "0"), (0, 3, "0")])
    );
    assert_eq!(
        table(&t, TheoryKind::U1, BaseRing::Rationals, Reduction::Unreduced),
        rec(&[(-2, 5, "h^2"), (0, 1, "0"), (0, 3, "0")])
    );
    assert_eq!(table(&t, TheoryKind::U1, BaseRing::Rationals, Reduction::Lee), rec(&[(-2, 6, "h"), (0, 2, "0")]));
    assert_eq!(table(&t, TheoryKind::U1, f2, Reduction::Lee), rec(&[(-2, 6, "h"), (0, 2, "0")]));
}

#[test]
fn unknot() {
    let u = LinkDiagram::unknot();
    assert_eq!(table(&u, TheoryKind::U1, BaseRing::Rationals, Reduction::Unreduced), rec(&[(0, -1, "0"), (0, 1, "0")]));
    assert_eq!(table(&u, TheoryKind::U1, BaseRing::Rationals, Reduction::Lee), rec(&[(0, 0, "0")]));
}

#[test]
fn snf_path_agrees() {
    let t = parse_pd(TREFOIL).unwrap();
    let f8 = parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap();
    for d in [&t, &f8] {
        for b in [BaseRing::Prime(2), BaseRing::Prime(3), BaseRing::Rationals] {
            for k in [TheoryKind::U1, TheoryKind::Plain, TheoryKind::SU2] {
                let c = CubeComplex::build(d, &Theory::new(k, b).unwrap(), Reduction::Unreduced).unwrap();
                assert_eq!(homology(&c).unwrap().module, homology_via_snf(&c).unwrap().module, "{k} {b}");
            }
        }
    }
}

#[test]
fn plain_integral_trefoil_has_two_torsion() {
    let t = parse_pd(TREFOIL).unwrap();
    let recs = table(&t, TheoryKind::Plain, BaseRing::Integers, Reduction::Unreduced);
    assert_eq!(recs.iter().filter(|r| r.2 == "2").count(), 1);
    assert_eq!(recs.iter().filter(|r| r.2 == "0").count(), 4);
}

#[test]
fn out_of_scope() {
    let t = parse_pd(TREFOIL).unwrap();
    let c = CubeComplex::build(&t, &Theory::new(TheoryKind::U2, BaseRing::Integers).unwrap(), Reduction::Unreduced).unwrap();
    assert_eq!(homology(&c).err().unwrap().to_string(), "unsupported: homology unavailable over ℤ[h,t]; use chain-level commands");
    for k in [TheoryKind::U2, TheoryKind::U1xU1] {
        let c = CubeComplex::build(&t, &Theory::new(k, BaseRing::Rationals).unwrap(), Reduction::Unreduced).unwrap();
        let e = homology(&c).err().unwrap();
        assert!(matches!(e, Error::Unsupported(_)));
        assert_eq!(e.exit_code(), 3);
    }
    let c = CubeComplex::build(&t, &Theory::new(TheoryKind::U1, BaseRing::Integers).unwrap(), Reduction::Unreduced).unwrap();
    assert!(homology(&c).is_err());
}

#[test]
fn coordinates_of_boundaries_and_generators() {
    let t = parse_pd(TREFOIL).unwrap();
    let th = Theory::new(TheoryKind::U1, BaseRing::Rationals).unwrap();
    let c = CubeComplex::build(&t, &th, Reduction::Unreduced).unwrap();
    let h = homology(&c).unwrap();
    for (s, z) in h.representatives.iter().enumerate() {
        let co = h.class_coordinates(&c, z).unwrap();
        let expect = vec![(s, th.ring.one())];
        if h.module.summands[s].is_free() {
            assert_eq!(co.free, expect);
        } else {
            assert_eq!(co.torsion, expect);
        }
    }
    for i in c.hom_degrees() {
        for k in 0..c.rank(i) {
            let b = c.d(&ChainVector::basis(i, k, th.ring.one()));
            assert!(h.class_coordinates(&c, &b).unwrap().is_zero());
        }
    }
}

#[test]
fn acyclic_small() {
    let t = parse_pd(TREFOIL).unwrap();
    for b in [BaseRing::Prime(2), BaseRing::Rationals] {
        let c = CubeComplex::build(&t, &Theory::new(TheoryKind::U1, b).unwrap(), Reduction::Unreduced).unwrap();
        assert!(nu_acyclicity(&c).unwrap().is_acyclic());
    }
    let c = CubeComplex::build(&LinkDiagram::unknot(), &Theory::new(TheoryKind::U1, BaseRing::Rationals).unwrap(), Reduction::Unreduced).unwrap();
    assert!(nu_acyclicity(&c).unwrap().is_acyclic());
}

#[test]
fn char_two_unreduced_is_two_shifted_reduced_copies() {
    for pd in [TREFOIL, "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]", "PD[X[2,4,1,3],X[4,2,3,1]]"] {
        let d = parse_pd(pd).unwrap();
        for k in [TheoryKind::U1, TheoryKind::Plain] {
            let th = Theory::new(k, BaseRing::Prime(2)).unwrap();
            let full = homology(&CubeComplex::build(&d, &th, Reduction::Unreduced).unwrap()).unwrap();
            let red = homology(&CubeComplex::build(&d, &th, Reduction::Lee).unwrap()).unwrap();
            let mut doubled: Vec<_> = red
                .module
                .summands
                .iter()
                .flat_map(|s| [-1, 1].map(|e| (s.i, s.q + e, s.order.clone())))
                .map(|(i, q, order)| crate::homology::Summand { i, q, order })
                .collect();
            doubled = crate::homology::GradedModule::new(red.module.ring.clone(), doubled).summands;
            assert_eq!(full.module.summands, doubled, "{pd} {k}");
        }
    }
}
