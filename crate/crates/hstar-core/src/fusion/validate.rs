//! Consistency certificate for skeletal multifusion data.

use super::data::FusionData;
use super::engine::Category;
use super::udf::{fp_residual, fpdims, UdfData};
use crate::numcore::{frob, unitarity_defect, CMatrix};
use crate::Tolerance;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct ValidationCertificate {
    pub accept: bool,
    pub pentagon_residual: f64,
    pub pentagon_instances: usize,
    pub f_unitarity_defect: f64,
    pub unit_leg_defect: f64,
    pub integer_checks: BTreeMap<String, bool>,
    pub fpdims: Option<Vec<f64>>,
    pub fp_residual: Option<f64>,
    pub zigzag_residual: Option<f64>,
    /// Names of the failed checks.
    pub failures: Vec<String>,
}

fn integer_checks(d: &FusionData) -> BTreeMap<String, bool> {
    let r = d.rank();
    let mut out = BTreeMap::new();
    out.insert("grading".to_string(), d.grading_consistent());

    let mut units_ok = true;
    let mut seen = std::collections::HashSet::new();
    for (i, &u) in d.units.iter().enumerate() {
        units_ok &= seen.insert(u) && d.source[u] == i && d.target[u] == i;
    }
    out.insert("units".to_string(), units_ok);

    let dual_ok = (0..r).all(|a| {
        let b = d.dual[a];
        b < r && d.dual[b] == a && d.source[b] == d.target[a] && d.target[b] == d.source[a]
    });
    out.insert("dual involution".to_string(), dual_ok);

    let mut unit_rules = true;
    for a in 0..r {
        for (i, &u) in d.units.iter().enumerate() {
            for cc in 0..r {
                let l = usize::from(cc == a && d.source[a] == i);
                let rr = usize::from(cc == a && d.target[a] == i);
                unit_rules &= d.nmult(u, a, cc) == l && d.nmult(a, u, cc) == rr;
            }
        }
    }
    out.insert("unit fusion".to_string(), unit_rules);

    let channel = dual_ok
        && (0..r).all(|a| {
            let b = d.dual[a];
            d.nmult(a, b, d.units[d.source[a]]) == 1 && d.nmult(b, a, d.units[d.target[a]]) == 1
        });
    out.insert("duality channel".to_string(), channel);

    let recip = dual_ok
        && (0..r).all(|a| {
            (0..r).all(|b| {
                (0..r).all(|cc| {
                    let n = d.nmult(a, b, cc);
                    n == d.nmult(d.dual[a], cc, b) && n == d.nmult(cc, d.dual[b], a)
                })
            })
        });
    out.insert("frobenius reciprocity".to_string(), recip);
    out
}

fn pentagon(cat: &Category) -> (f64, usize) {
    let d = &cat.data;
    let r = d.rank();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for a in 0..r {
        for b in 0..r {
            if d.target[a] != d.source[b] {
                continue;
            }
            for cc in 0..r {
                if d.target[b] != d.source[cc] {
                    continue;
                }
                for e in 0..r {
                    if d.target[cc] != d.source[e] {
                        continue;
                    }
                    let (x, y, z, w) = (cat.simple(a), cat.simple(b), cat.simple(cc), cat.simple(e));
                    let xy = cat.tensor_obj(&x, &y);
                    let zw = cat.tensor_obj(&z, &w);
                    let yz = cat.tensor_obj(&y, &z);
                    let lhs = cat.assoc(&x, &y, &zw).after(&cat.assoc(&xy, &z, &w));
                    let rhs = cat
                        .tensor(&cat.id(&x), &cat.assoc(&y, &z, &w))
                        .after(&cat.assoc(&x, &yz, &w))
                        .after(&cat.tensor(&cat.assoc(&x, &y, &z), &cat.id(&w)));
                    worst = worst.max(lhs.sub(&rhs).norm());
                    count += 1;
                }
            }
        }
    }
    (worst, count)
}

/// Largest defect of either zig-zag identity over all simples.
pub fn zigzag_residual(cat: &Category) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..cat.rank() {
        let x = cat.simple(a);
        let xd = cat.dual_obj(&x);
        let first = cat
            .runit(&x)
            .after(&cat.tensor(&cat.id(&x), &cat.ev(&x)))
            .after(&cat.assoc(&x, &xd, &x))
            .after(&cat.tensor(&cat.coev(&x), &cat.id(&x)))
            .after(&cat.lunit(&x).dagger());
        let second = cat
            .lunit(&xd)
            .after(&cat.tensor(&cat.ev(&x), &cat.id(&xd)))
            .after(&cat.assoc_inv(&xd, &x, &xd))
            .after(&cat.tensor(&cat.id(&xd), &cat.coev(&x)))
            .after(&cat.runit(&xd).dagger());
        worst = worst
            .max(first.sub(&cat.id(&x)).norm())
            .max(second.sub(&cat.id(&xd)).norm());
    }
    worst
}

pub fn validate(data: &FusionData, tol: &Tolerance) -> ValidationCertificate {
    let ints = integer_checks(data);
    let mut failures: Vec<String> = ints.iter().filter(|(_, &ok)| !ok).map(|(k, _)| k.clone()).collect();

    let mut unitarity: f64 = 0.0;
    let mut unit_leg: f64 = 0.0;
    for (q, blk) in data.fblocks() {
        unitarity = unitarity.max(unitarity_defect(&blk.matrix).unwrap_or(f64::INFINITY));
        if q[..3].iter().any(|&x| data.unit_sheet(x).is_some()) {
            let n = blk.matrix.nrows();
            unit_leg = unit_leg.max(frob(&(&blk.matrix - CMatrix::identity(n, n))));
        }
    }
    if !tol.accepts(unitarity, 1.0) {
        failures.push("F unitarity".into());
    }
    if !tol.accepts(unit_leg, 1.0) {
        failures.push("triangle".into());
    }

    let placeholder = UdfData {
        psi: vec![1.0; data.sheets()],
        fpdims: vec![1.0; data.rank()],
        dims: vec![1.0; data.rank()],
        dim_l: vec![1.0; data.rank()],
        dim_r: vec![1.0; data.rank()],
        ev: vec![crate::numcore::c(0.0); data.rank()],
        coev: vec![crate::numcore::c(0.0); data.rank()],
        chain_residual: 0.0,
    };
    let (pent, instances) = pentagon(&Category::with_udf(data.clone(), placeholder));
    if !tol.accepts(pent, 1.0) {
        failures.push("pentagon".into());
    }

    let mut fp_out = None;
    let mut fp_res = None;
    let mut zig = None;
    match fpdims(data) {
        Ok(fp) => {
            let res = fp_residual(data, &fp);
            let scale = fp.iter().cloned().fold(1.0, f64::max).powi(2);
            if !tol.accepts(res, scale) {
                failures.push("FPdim multiplicativity".into());
            }
            match UdfData::new(data, &fp, &vec![1.0; data.sheets()]) {
                Ok(udf) => {
                    let z = zigzag_residual(&Category::with_udf(data.clone(), udf));
                    if !tol.accepts(z, 1.0) {
                        failures.push("zig-zag".into());
                    }
                    zig = Some(z);
                }
                Err(_) => failures.push("duality gauge".into()),
            }
            fp_out = Some(fp);
            fp_res = Some(res);
        }
        Err(_) => failures.push("FPdim".into()),
    }

    ValidationCertificate {
        accept: failures.is_empty(),
        pentagon_residual: pent,
        pentagon_instances: instances,
        f_unitarity_defect: unitarity,
        unit_leg_defect: unit_leg,
        integer_checks: ints,
        fpdims: fp_out,
        fp_residual: fp_res,
        zigzag_residual: zig,
        failures,
    }
}
