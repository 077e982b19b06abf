use hstar_core::deligne::*;
use hstar_core::fusion::{bundled, Category};
use hstar_core::{sample, Tolerance};
use proptest::prelude::*;
use std::rc::Rc;

fn ladder(which: usize) -> Ladder {
    let (d, psi) = match which {
        0 => (bundled::z2(), vec![1.0]),
        1 => (bundled::fibonacci(), vec![1.0]),
        2 => (bundled::ising(), vec![1.0]),
        _ => (bundled::matrix2_hilb(), vec![2.0, 0.5]),
    };
    Ladder::regular(Rc::new(Category::new(d, &psi).unwrap()))
}

fn objects(l: &Ladder) -> Vec<LadderObject> {
    let cat = &l.cat;
    let r = cat.rank();
    let mut out = Vec::new();
    for x in 0..r {
        for y in 0..r {
            let o = l.object_of(&cat.simple(x), &cat.simple(y));
            if !l.identity(&o).terms.is_empty() {
                out.push(o);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trace_is_tracial_in_both_orders(which in 0usize..4, i in 0usize..64, j in 0usize..64, seed in any::<u64>()) {
        let l = ladder(which);
        let objs = objects(&l);
        let (x, y) = (&objs[i % objs.len()], &objs[j % objs.len()]);
        let mut rng = sample::rng(seed);
        let f = l.random_hom(&mut rng, x, y);
        let g = l.random_hom(&mut rng, y, x);
        let a = l.trace(&l.compose(&g, &f).unwrap());
        let b = l.trace(&l.compose(&f, &g).unwrap());
        prop_assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()));
    }

    #[test]
    fn composition_is_associative_and_realized(which in 0usize..4, i in 0usize..64, j in 0usize..64, k in 0usize..64, seed in any::<u64>()) {
        let l = ladder(which);
        let objs = objects(&l);
        let (x, y, z) = (&objs[i % objs.len()], &objs[j % objs.len()], &objs[k % objs.len()]);
        let mut rng = sample::rng(seed);
        let f = l.random_hom(&mut rng, x, y);
        let g = l.random_hom(&mut rng, y, z);
        let h = l.random_hom(&mut rng, z, x);
        let left = l.compose(&h, &l.compose(&g, &f).unwrap()).unwrap();
        let right = l.compose(&l.compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert!(l.distance(&left, &right) < 1e-9);
        let gf = l.compose(&g, &f).unwrap();
        let r = l.realize(&gf).sub(&l.realize(&g).after(&l.realize(&f)));
        prop_assert!(r.norm() < 1e-9);
    }

    #[test]
    fn trace_is_positive(which in 0usize..4, i in 0usize..64, j in 0usize..64, seed in any::<u64>()) {
        let l = ladder(which);
        let objs = objects(&l);
        let (x, y) = (&objs[i % objs.len()], &objs[j % objs.len()]);
        let mut rng = sample::rng(seed);
        let f = l.random_hom(&mut rng, x, y);
        let t = l.trace(&l.compose(&l.dagger(&f), &f).unwrap());
        prop_assert!(t.im.abs() < 1e-9 && t.re > -1e-9);
        if !f.terms.is_empty() {
            prop_assert!(t.re > 1e-12);
        }
    }
}

#[test]
fn right_action_isometry_over_algebras() {
    let tol = Tolerance::default();
    for (name, a) in hstar_core::intalg::examples() {
        let cert = right_action_isometry(&a, 20, &tol, 7).unwrap();
        assert!(cert.accept, "{name}: {cert:?}");
    }
}
