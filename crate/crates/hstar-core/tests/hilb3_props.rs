use hstar_core::fusion::{bundled, Category, FusionData};
use hstar_core::hilb3::*;
use hstar_core::Tolerance;
use proptest::prelude::*;
use std::rc::Rc;

fn base(which: usize, psi: (f64, f64)) -> Rc<Category> {
    let (d, w): (FusionData, Vec<f64>) = match which {
        0 => (bundled::z2(), vec![psi.0]),
        1 => (bundled::fibonacci(), vec![psi.0]),
        _ => (bundled::matrix2_hilb(), vec![psi.0, psi.1]),
    };
    Rc::new(Category::new(d, &w).unwrap())
}

fn sheets(c: &Category, picks: &[usize]) -> Vec<usize> {
    let k = c.data.sheets();
    picks.iter().map(|p| p % k).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sums_of_random_objects_are_hilbert_sums(
        which in 0usize..3,
        psi in (0.2f64..5.0, 0.2f64..5.0),
        a in prop::collection::vec(0usize..4, 1..3),
        b in prop::collection::vec(0usize..4, 1..3),
        seed in 0u64..1000,
    ) {
        let c = base(which, psi);
        let (sa, sb) = (sheets(&c, &a), sheets(&c, &b));
        let mut x = Pre3HilbPresentation::new(c, vec![sa, sb], vec!["a".into(), "b".into()]).unwrap();
        let t = x.boxplus(&[0, 1]).unwrap();
        let tol = Tolerance::default();
        let cert = x.direct_sum_certificate(t, &[0, 1], &tol, seed).unwrap();
        prop_assert!(cert.sum_defect < 1e-10, "{cert:?}");
        prop_assert!(cert.additivity_residual < 1e-9, "{cert:?}");
        prop_assert!(cert.inclusions.iter().all(|k| *k == IsometryKind::Isometry));
    }

    #[test]
    fn hom_spaces_are_spherical(
        which in 0usize..3,
        psi in (0.2f64..5.0, 0.2f64..5.0),
        a in prop::collection::vec(0usize..4, 1..3),
        b in prop::collection::vec(0usize..4, 1..3),
        seed in 0u64..1000,
    ) {
        let c = base(which, psi);
        let (sa, sb) = (sheets(&c, &a), sheets(&c, &b));
        let x = Pre3HilbPresentation::new(c, vec![sa, sb], vec!["a".into(), "b".into()]).unwrap();
        let tol = Tolerance::default();
        let (space, cert) = hom_two_hilbert(&x, 0, 1, &tol, seed).unwrap();
        prop_assert!(cert.left_right_residual < 1e-9);
        prop_assert!(cert.weight_reconstruction_residual < 1e-9);
        prop_assert!(space.dims.iter().all(|&d| d > 0.0));
        let l = linking_e1(&x, 0, 1, &tol).unwrap();
        prop_assert!(l.validation.accept, "{:?}", l.validation.failures);
    }

    #[test]
    fn gauge_changes_leave_duality_unique(which in 0usize..3, psi in (0.2f64..5.0, 0.2f64..5.0), seed in 0u64..1000) {
        let c = base(which, psi);
        let g = gauge_perturbed(&c, seed);
        let cert = uaf_uniqueness_check(&c.data, &c.udf, &g, &Tolerance::default(), seed).unwrap();
        prop_assert!(cert.max_defect < 1e-9, "{cert:?}");
    }

    #[test]
    fn theorem_b_for_weighted_matrix_category(psi in (0.2f64..5.0, 0.2f64..5.0)) {
        let c = base(2, psi);
        let cert = theorem_b_check(&c, &Tolerance::default(), 0).unwrap();
        prop_assert!(cert.accept, "{cert:?}");
    }
}

#[test]
fn every_bundled_monad_splits() {
    let tol = Tolerance::default();
    for (name, a) in hstar_core::intalg::examples() {
        let one = hstar_core::intalg::AlgebraObject::trivial(a.cat.clone());
        let s = split_monad(&one, &a, &a.iota, &tol, 0).unwrap();
        assert!(s.certificate.accept && s.certificate.u_defect < 1e-8, "{name}: {:?}", s.certificate);
        let (b, j) = induced_monad(&a);
        let s = split_monad(&a, &b, &j, &tol, 0).unwrap();
        assert!(s.certificate.accept && s.certificate.u_defect < 1e-8, "{name}: {:?}", s.certificate);
    }
}
