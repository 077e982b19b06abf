//! Matrix multifusion categories `M_a(C)` over a list of sheets, and direct sums.

use crate::fusion::{FusionData, FusionError};
use crate::numcore::CMatrix;
use std::collections::HashMap;

/// Simples of `M_a(C)` as `(p, q, c)` with `c : a_p → a_q`, ordered by `p`, then `q`, then `c`.
pub fn matrix_simples(base: &FusionData, sheets: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (p, &sp) in sheets.iter().enumerate() {
        for (q, &sq) in sheets.iter().enumerate() {
            for c in 0..base.rank() {
                if base.source[c] == sp && base.target[c] == sq {
                    out.push((p, q, c));
                }
            }
        }
    }
    out
}

fn matrix_label(base: &FusionData, (p, q, c): (usize, usize, usize)) -> String {
    format!("{}[{p}.{q}]", base.simples[c])
}

/// `End(a_1 ⊞ … ⊞ a_r)` for sheets `a_i` of `base`; F-blocks are copied from `base`.
pub fn matrix_category(base: &FusionData, sheets: &[usize]) -> Result<FusionData, FusionError> {
    let simples = matrix_simples(base, sheets);
    let r = simples.len();
    let index: HashMap<(usize, usize, usize), usize> = simples.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let labels = simples.iter().map(|&s| matrix_label(base, s)).collect();
    let units = (0..sheets.len()).map(|p| index[&(p, p, base.units[sheets[p]])]).collect();
    let source = simples.iter().map(|s| s.0).collect();
    let target = simples.iter().map(|s| s.1).collect();
    let dual = simples.iter().map(|&(p, q, c)| index[&(q, p, base.dual[c])]).collect();
    let mut n = vec![0; r * r * r];
    for (i, &(p, q, a)) in simples.iter().enumerate() {
        for (j, &(q2, s, b)) in simples.iter().enumerate() {
            if q != q2 {
                continue;
            }
            for e in 0..base.rank() {
                let k = base.nmult(a, b, e);
                if k > 0 {
                    n[(i * r + j) * r + index[&(p, s, e)]] = k;
                }
            }
        }
    }
    let mut f = HashMap::new();
    for (q, blk) in base.fblocks() {
        let [a, b, c, d] = *q;
        for (p0, &s0) in sheets.iter().enumerate() {
            if base.source[a] != s0 {
                continue;
            }
            for (p1, &s1) in sheets.iter().enumerate() {
                if base.target[a] != s1 {
                    continue;
                }
                for (p2, &s2) in sheets.iter().enumerate() {
                    if base.target[b] != s2 {
                        continue;
                    }
                    for (p3, &s3) in sheets.iter().enumerate() {
                        if base.target[c] != s3 {
                            continue;
                        }
                        let key = [
                            index[&(p0, p1, a)],
                            index[&(p1, p2, b)],
                            index[&(p2, p3, c)],
                            index[&(p0, p3, d)],
                        ];
                        f.insert(key, blk.matrix.clone());
                    }
                }
            }
        }
    }
    FusionData::from_parts(labels, units, source, target, dual, n, f)
}

/// Block-diagonal direct sum `C ⊕ D`; labels of `D` get a prime.
pub fn direct_sum(x: &FusionData, y: &FusionData) -> Result<FusionData, FusionError> {
    let (rx, ry) = (x.rank(), y.rank());
    let r = rx + ry;
    let kx = x.sheets();
    let mut simples = x.simples.clone();
    simples.extend(y.simples.iter().map(|s| format!("{s}'")));
    let mut units = x.units.clone();
    units.extend(y.units.iter().map(|u| u + rx));
    let mut source = x.source.clone();
    source.extend(y.source.iter().map(|s| s + kx));
    let mut target = x.target.clone();
    target.extend(y.target.iter().map(|s| s + kx));
    let mut dual = x.dual.clone();
    dual.extend(y.dual.iter().map(|d| d + rx));
    let mut n = vec![0; r * r * r];
    for (off, d) in [(0, x), (rx, y)] {
        let k = d.rank();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    n[((a + off) * r + b + off) * r + c + off] = d.nmult(a, b, c);
                }
            }
        }
    }
    let mut f: HashMap<[usize; 4], CMatrix> = HashMap::new();
    for (off, d) in [(0, x), (rx, y)] {
        for (q, blk) in d.fblocks() {
            f.insert([q[0] + off, q[1] + off, q[2] + off, q[3] + off], blk.matrix.clone());
        }
    }
    let mut out = FusionData::from_parts(simples, units, source, target, dual, n, f)?;
    if let (Some(p), Some(q)) = (&x.psi, &y.psi) {
        out.psi = Some(p.iter().chain(q).copied().collect());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{bundled, validate};
    use crate::Tolerance;

    #[test]
    fn two_by_two_over_hilb_is_the_bundled_matrix_category() {
        let m = matrix_category(&bundled::hilb(), &[0, 0]).unwrap();
        let b = bundled::matrix2_hilb();
        assert_eq!(m.rank(), b.rank());
        assert_eq!(m.sheets(), 2);
        let cert = validate(&m, &Tolerance::default());
        assert!(cert.accept, "{:?}", cert.failures);
        let row_sums = |d: &FusionData| -> Vec<usize> {
            (0..4).map(|i| (0..4).map(|j| (0..4).map(|k| d.nmult(i, j, k)).sum::<usize>()).sum()).collect()
        };
        let (mut x, mut y) = (row_sums(&m), row_sums(&b));
        x.sort();
        y.sort();
        assert_eq!(x, y);
    }

    #[test]
    fn matrix_categories_validate() {
        let tol = Tolerance::default();
        for (d, sheets, rank) in [
            (bundled::fibonacci(), vec![0, 0], 8),
            (bundled::ising(), vec![0, 0], 12),
            (bundled::z3(), vec![0, 0, 0], 27),
            (bundled::matrix2_hilb(), vec![0, 1, 1], 9),
        ] {
            let m = matrix_category(&d, &sheets).unwrap();
            assert_eq!(m.rank(), rank);
            let cert = validate(&m, &tol);
            assert!(cert.accept, "{:?}", cert.failures);
        }
    }

    #[test]
    fn direct_sum_is_decomposable() {
        let s = direct_sum(&bundled::fibonacci(), &bundled::z2()).unwrap();
        assert_eq!(s.rank(), 4);
        assert_eq!(s.components().len(), 2);
        assert!(validate(&s, &Tolerance::default()).accept);
    }
}
