use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{Algebra, Path, PathExpr, Quiver};
use crate::corpus;
use crate::exactla::{Matrix, PrimeField};

fn a3() -> Arc<Algebra> {
    Arc::new(corpus::a3())
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0)
}

fn iso(m: &Representation, n: &Representation) -> bool {
    is_isomorphic(m, n, &mut rng()).unwrap()
}

#[test]
fn standard_modules_over_a3() {
    let a = a3();
    let p1 = Representation::projective(&a, 0);
    assert_eq!(p1.dims(), &[1, 1, 1]);
    let f = a.field();
    assert_eq!(p1.arrow_map(0), &Matrix::identity(f, 1));
    assert_eq!(p1.arrow_map(1), &Matrix::identity(f, 1));
    let i1 = Representation::injective(&a, 0);
    assert_eq!(i1.dims(), &[1, 0, 0]);
    assert!(iso(&i1, &Representation::simple(&a, 0)));
    let i3 = Representation::injective(&a, 2);
    assert_eq!(i3.dims(), &[1, 1, 1]);
    for i in 0..3 {
        let s = Representation::simple(&a, i);
        assert!(s.maps().iter().all(Matrix::is_zero));
        assert!(s.validate().is_empty());
    }
    assert_eq!(Representation::regular(&a).dims(), &[1, 2, 3]);
    assert_eq!(Representation::dual_regular(&a).dims(), &[3, 2, 1]);
}

#[test]
fn validation_reports_relations() {
    let a = a3();
    assert!(Representation::zero(&a).validate().is_empty());
    for alg in corpus::all() {
        let alg = Arc::new(alg);
        for i in 0..alg.vertex_count() {
            assert!(Representation::projective(&alg, i).validate().is_empty());
            assert!(Representation::injective(&alg, i).validate().is_empty());
        }
    }
    // P(1) of A3 violates the relation a*b once it is imposed.
    let q = Quiver::from_edges(3, &[("a", 0, 1), ("b", 1, 2)]).unwrap();
    let ab = Path::from_arrows(&q, &[0, 1]).unwrap();
    let bound = Arc::new(
        Algebra::build("a3/ab", q, vec![PathExpr::path(ab)], PrimeField::default(), 10).unwrap(),
    );
    let p1 = Representation::projective(&a, 0);
    let mutant = Representation::from_parts(bound.clone(), p1.dims().to_vec(), p1.maps().to_vec()).unwrap();
    let v = mutant.validate();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].residual, Matrix::identity(a.field(), 1));
    assert!(Representation::new(bound, p1.dims().to_vec(), p1.maps().to_vec()).is_err());
}

#[test]
fn direct_sums() {
    let a = a3();
    let p1 = Representation::projective(&a, 0);
    let z = Representation::zero(&a);
    assert!(iso(&p1.direct_sum(&z).unwrap(), &p1));
    let ds = p1.direct_sum_with_maps(&Representation::simple(&a, 1)).unwrap();
    assert_eq!(ds.sum.dims(), &[1, 2, 1]);
    for k in 0..2 {
        assert!(ds.inj[k].intertwines() && ds.proj[k].intertwines());
        assert!(ds.inj[k].then(&ds.proj[k]).unwrap().is_iso());
    }
    let other = Arc::new(corpus::nakayama(3, 3));
    assert_eq!(
        p1.direct_sum(&Representation::simple(&other, 0)).unwrap_err(),
        crate::Error::AlgebraMismatch
    );
}

#[test]
fn hom_spaces() {
    let a = a3();
    let s1 = Representation::simple(&a, 0);
    let p1 = Representation::projective(&a, 0);
    assert_eq!(hom_dim(&s1, &p1).unwrap(), 0);
    let id = Morphism::identity(&p1);
    let basis = hom_basis(&p1, &p1).unwrap();
    assert_eq!(basis.len(), 1);
    assert!(basis[0].intertwines());
    assert_eq!(basis[0].scale(basis[0].comp(0).get(0, 0)).comp(0), id.comp(0));
    let mut r = rng();
    for alg in corpus::all() {
        let alg = Arc::new(alg);
        for _ in 0..3 {
            let m = random_module(&alg, 3, 12, &mut r).unwrap();
            for v in 0..alg.vertex_count() {
                assert_eq!(hom_dim(&Representation::projective(&alg, v), &m).unwrap(), m.dim(v));
                assert_eq!(hom_dim(&m, &Representation::injective(&alg, v)).unwrap(), m.dim(v));
            }
        }
    }
}

#[test]
fn sub_quotients() {
    let a = a3();
    let p1 = Representation::projective(&a, 0);
    let sq = sub_quotient(&Morphism::identity(&p1)).unwrap();
    assert!(sq.kernel.is_zero() && sq.cokernel.is_zero());
    let s2 = Representation::simple(&a, 1);
    let sq = sub_quotient(&Morphism::zero(&p1, &s2)).unwrap();
    assert_eq!(sq.kernel.dims(), p1.dims());
    assert_eq!(sq.cokernel.dims(), s2.dims());
    let (_, pi) = projective_cover(&Representation::simple(&a, 0)).unwrap();
    let sq = sub_quotient(&pi).unwrap();
    assert_eq!(sq.kernel.dims(), &[0, 1, 1]);
    // ker -> M -> im -> N reproduces f.
    let back = sq.coimage_projection.then(&sq.image_inclusion).unwrap();
    assert_eq!(back.comps(), pi.comps());
    assert!(sq.kernel_inclusion.then(&pi).unwrap().is_zero());
    assert!(pi.then(&sq.cokernel_projection).unwrap().is_zero());
}

#[test]
fn radical_socle_top_of_projective() {
    let a = a3();
    let p1 = Representation::projective(&a, 0);
    let rst = radical_socle_top(&p1).unwrap();
    assert_eq!(rst.top.dims(), &[1, 0, 0]);
    assert_eq!(rst.socle.dims(), &[0, 0, 1]);
    assert_eq!(rst.radical.dims(), &[0, 1, 1]);
    let ss = Representation::simple(&a, 0).direct_sum(&Representation::simple(&a, 2)).unwrap();
    let rst = radical_socle_top(&ss).unwrap();
    assert!(rst.radical.is_zero());
    assert_eq!(rst.socle.dims(), ss.dims());
}

#[test]
fn covers_and_envelopes() {
    let a = a3();
    let s1 = Representation::simple(&a, 0);
    let (p, pi) = projective_cover(&s1).unwrap();
    assert_eq!(p.tops, vec![0]);
    assert!(pi.is_epi());
    let p2 = Representation::projective(&a, 1);
    let (_, pi) = projective_cover(&p2).unwrap();
    assert!(pi.is_iso());
    let (p, _) = projective_cover(&Representation::zero(&a)).unwrap();
    assert!(p.rep.is_zero());

    let s3 = Representation::simple(&a, 2);
    let (e, iota) = injective_envelope(&s3).unwrap();
    assert_eq!(e.dims(), &[1, 1, 1]);
    assert!(iota.is_mono());
    assert!(iso(&e, &Representation::injective(&a, 2)));
    let i2 = Representation::injective(&a, 1);
    let (_, iota) = injective_envelope(&i2).unwrap();
    assert!(iota.is_iso());
}

#[test]
fn syzygies() {
    let a = a3();
    assert!(syzygy(&Representation::projective(&a, 0), 1).unwrap().is_zero());
    let om = syzygy(&Representation::simple(&a, 0), 1).unwrap();
    assert!(iso(&om, &Representation::projective(&a, 1)));
    let n = Arc::new(corpus::nakayama(3, 3));
    for i in 0..3 {
        let om = syzygy(&Representation::simple(&n, i), 1).unwrap();
        assert_eq!(om.total_dim(), 2);
        let rad = radical_socle_top(&Representation::projective(&n, i)).unwrap().radical;
        assert!(iso(&om, &rad));
        let om2 = syzygy(&Representation::simple(&n, i), 2).unwrap();
        assert!(iso(&om2, &Representation::simple(&n, i)));
        let co = cosyzygy(&Representation::simple(&n, i), 2).unwrap();
        assert!(iso(&co, &Representation::simple(&n, i)));
    }
}

#[test]
fn duality() {
    for alg in corpus::all() {
        let alg = Arc::new(alg);
        let op = alg.opposite_arc();
        for i in 0..alg.vertex_count() {
            let s = Representation::simple(&alg, i);
            assert_eq!(s.dual(), Representation::simple(&op, i));
            let p = Representation::projective(&alg, i);
            assert_eq!(p.dual().dual(), p);
            assert!(Arc::ptr_eq(p.dual().dual().algebra(), &alg));
            let ip = Representation::injective(&op, i);
            assert!(iso(&p.dual(), &ip));
        }
    }
}

#[test]
fn transpose_and_tau() {
    let a = a3();
    let s1 = Representation::simple(&a, 0);
    let s2 = Representation::simple(&a, 1);
    assert!(transpose(&Representation::projective(&a, 0)).unwrap().is_zero());
    let trtr = transpose(&transpose(&s1).unwrap()).unwrap().rebase(&a).unwrap();
    assert!(iso(&trtr, &s1));
    let t = tau(&s1).unwrap();
    assert!(iso(&t, &s2));
    for i in 0..3 {
        assert!(tau(&Representation::projective(&a, i)).unwrap().is_zero());
        assert!(tau_inverse(&Representation::injective(&a, i)).unwrap().is_zero());
    }
    let back = tau_inverse(&tau(&s2).unwrap()).unwrap();
    assert!(iso(&back, &s2));

    let d = Arc::new(corpus::truncated_polynomial(2));
    let s = Representation::simple(&d, 0);
    let tr = transpose(&s).unwrap();
    assert!(iso(&tr, &Representation::simple(&d.opposite_arc(), 0)));
}

#[test]
fn endomorphism_algebras() {
    let a = a3();
    let s1 = Representation::simple(&a, 0);
    let e = end_algebra(&s1).unwrap();
    assert_eq!((e.dim(), e.radical_dim()), (1, 0));
    let p1 = Representation::projective(&a, 0);
    let e = end_algebra(&p1.power(2)).unwrap();
    assert_eq!(e.dim(), 4);
    assert_eq!(e.top_dim(), 4);
    let reg = Representation::regular(&a);
    let e = end_algebra(&reg).unwrap();
    assert_eq!(e.dim(), 6);
    assert_eq!(e.radical_dim(), 3);
    let c = e.structure_constants();
    assert_eq!(c.len(), 6);

    let small = Arc::new(
        Algebra::build(
            "a3",
            a.quiver().clone(),
            vec![],
            PrimeField::new(3).unwrap(),
            10,
        )
        .unwrap(),
    );
    let m = Representation::regular(&small);
    assert!(matches!(end_algebra(&m), Err(crate::Error::FieldTooSmall { .. })));
}

#[test]
fn decomposition() {
    let a = a3();
    let reg = Representation::regular(&a);
    let d = decompose(&reg, &mut rng()).unwrap();
    assert_eq!(d.parts.len(), 3);
    let expected: Vec<Representation> = (0..3).map(|i| Representation::projective(&a, i)).collect();
    assert!(endo::multisets_isomorphic(&d.parts, &expected).unwrap());
    assert!(d.iso(&reg).unwrap().is_iso());
    for (i, p) in d.inclusions.iter().zip(&d.projections) {
        assert!(i.then(p).unwrap().is_iso());
    }
    let s1 = Representation::simple(&a, 0);
    let d = decompose(&s1.power(2), &mut rng()).unwrap();
    assert_eq!(d.parts.len(), 2);
    assert!(d.parts.iter().all(|p| p.dims() == s1.dims()));
    let d = decompose(&Representation::projective(&a, 0), &mut rng()).unwrap();
    assert_eq!(d.parts.len(), 1);
}

#[test]
fn decomposition_with_nonsplit_endomorphism_field() {
    // Kronecker quiver: the regular module for x^2 + 1 (irreducible mod 32003)
    // has End = GF(p^2) and is indecomposable.
    let q = Quiver::from_edges(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
    let k = Arc::new(Algebra::build("kronecker", q, vec![], PrimeField::default(), 10).unwrap());
    let f = k.field();
    let id = Matrix::identity(f, 2);
    let rot = Matrix::from_i64_rows(f, &[&[0, -1], &[1, 0]]);
    let m = Representation::new(k.clone(), vec![2, 2], vec![id, rot]).unwrap();
    let e = end_algebra(&m).unwrap();
    assert_eq!(e.top_dim(), 2);
    assert!(is_indecomposable(&m, &mut rng()).unwrap());
    let d = decompose(&m.power(2), &mut rng()).unwrap();
    assert_eq!(d.parts.len(), 2);
}

#[test]
fn isomorphism_tests() {
    let a = a3();
    let p2 = Representation::projective(&a, 1);
    assert!(iso(&p2, &p2));
    assert!(!iso(&Representation::simple(&a, 0), &Representation::simple(&a, 1)));
    let f = a.field();
    let g = vec![
        Matrix::zeros(f, 0, 0),
        Matrix::from_i64_rows(f, &[&[5]]),
        Matrix::from_i64_rows(f, &[&[-3]]),
    ];
    let conj = p2.conjugate(&g).unwrap();
    assert_ne!(conj, p2);
    assert!(iso(&conj, &p2));
    // Same dims, not isomorphic: P(2) and S2 ⊕ S3.
    let ss = Representation::simple(&a, 1).direct_sum(&Representation::simple(&a, 2)).unwrap();
    assert!(!iso(&ss, &p2));
}

#[test]
fn krull_schmidt_on_sums() {
    let mut r = rng();
    for alg in corpus::all() {
        let alg = Arc::new(alg);
        let m = random_module(&alg, 2, 8, &mut r).unwrap();
        let n = random_module(&alg, 2, 8, &mut r).unwrap();
        let dm = decompose(&m, &mut r).unwrap();
        let dn = decompose(&n, &mut r).unwrap();
        let ds = decompose(&m.direct_sum(&n).unwrap(), &mut r).unwrap();
        let union: Vec<Representation> = dm.parts.iter().chain(&dn.parts).cloned().collect();
        assert!(endo::multisets_isomorphic(&ds.parts, &union).unwrap(), "{}", alg.name());
    }
}

#[test]
fn module_files_round_trip() {
    let mut r = rng();
    for alg in corpus::all() {
        let alg = Arc::new(alg);
        for _ in 0..3 {
            let m = random_module(&alg, 3, 12, &mut r).unwrap();
            let text = write_module(&m);
            let back = read_module(&alg, &text).unwrap();
            assert_eq!(back, m);
            assert_eq!(write_module(&back), text);
        }
        let z = Representation::zero(&alg);
        assert_eq!(read_module(&alg, &write_module(&z)).unwrap(), z);
    }
    let a = a3();
    let bad = "module\ndims 1 1 1\nmap a 1 x 1\n1\nmap b 1 x 2\n1 1\n";
    assert!(matches!(read_module(&a, bad), Err(crate::Error::Parse { line: 5, .. })));
    let bad = "module\ndims 1 1\n";
    assert!(matches!(read_module(&a, bad), Err(crate::Error::Parse { line: 2, .. })));
}
