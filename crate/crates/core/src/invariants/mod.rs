//! Alexander-module invariants of a diagram: the rank `beta`, the Alexander
//! polynomial, the torsion Alexander polynomial, plus the Conway polynomial by
//! skein recursion and the one-variable Alexander polynomial derived from it.

mod conway;
pub mod matrix;

pub use conway::{
    conway_polynomial, one_variable_alexander, sato_levine, ConwayError, ConwayPoly, DEFAULT_CONWAY_BUDGET,
};

use serde::{Deserialize, Serialize};

use crate::diagram::{FoxJacobian, LinkDiagram};
use crate::exec::Exec;
use crate::factor::gcd;
use crate::laurent::LaurentPoly;
use matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderData {
    pub components: usize,
    pub beta: usize,
    /// Zero exactly when `beta > 0`; otherwise in unit normal form.
    pub delta: LaurentPoly,
    /// Never zero; in unit normal form.
    pub delta_tor: LaurentPoly,
}

/// Exact rank of the Jacobian together with ranks at sampled points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub exact: usize,
    pub sampled: Vec<usize>,
}

impl RankReport {
    pub fn consistent(&self) -> bool {
        self.sampled.iter().all(|&r| r == self.exact)
    }
}

pub fn jacobian_rank(j: &FoxJacobian) -> RankReport {
    let exact = matrix::rank_exact(&j.rows, j.column_count());
    let sampled = matrix::sampled_ranks(&j.rows, j.column_count(), j.nvars, 3, 0x0a1e_c5a7);
    RankReport { exact, sampled }
}

/// Rank of the Alexander module over the quotient field.
pub fn rank_beta(j: &FoxJacobian) -> usize {
    let report = jacobian_rank(j);
    debug_assert!(report.consistent(), "sampled ranks {:?} exceed exact rank {}", report.sampled, report.exact);
    j.column_count() - report.exact - 1
}

fn normal(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        p.clone()
    } else {
        p.normalize_unit().expect("nonzero").into_poly()
    }
}

fn gcd_all(polys: impl IntoIterator<Item = LaurentPoly>, nvars: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(nvars);
    for p in polys {
        if acc.is_one() {
            break;
        }
        if p.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { normal(&p) } else { gcd(&acc, &p).expect("not both zero") };
    }
    acc
}

fn submatrix(rows: &Matrix, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
    row_idx.iter().map(|&r| col_idx.iter().map(|&c| rows[r][c].clone()).collect()).collect()
}

/// All `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::factor::univariate::combinations(n, k)
}

/// Gcd of the maximal minors of the Jacobian with column `col` deleted.
pub fn deleted_column_minor_gcd(j: &FoxJacobian, col: usize, exec: Exec) -> LaurentPoly {
    let cols: Vec<usize> = (0..j.column_count()).filter(|&c| c != col).collect();
    let k = cols.len();
    if k > j.row_count() {
        return LaurentPoly::zero(j.nvars);
    }
    let minors =
        exec.map(subsets(j.row_count(), k), |rows| matrix::determinant(&submatrix(&j.rows, &rows, &cols), j.nvars));
    gcd_all(minors, j.nvars)
}

/// The Alexander polynomial, zero when `beta > 0`.
pub fn alexander_multivariable(j: &FoxJacobian, exec: Exec) -> LaurentPoly {
    if rank_beta(j) > 0 {
        return LaurentPoly::zero(j.nvars);
    }
    let a0 = deleted_column_minor_gcd(j, 0, exec);
    if j.nvars == 1 {
        return a0;
    }
    let weight = j.column_weight(0);
    normal(&a0.divide_exact(&weight).expect("same ring").expect("column weight divides the minor gcd"))
}

/// Gcd of all `r x r` minors, `r` the rank. When `beta = 0` this equals the gcd
/// of the deleted-column gcds over one column per component, since deleted-column
/// gcds within a component agree up to units.
pub fn torsion_alexander(j: &FoxJacobian, exec: Exec) -> LaurentPoly {
    let r = jacobian_rank(j).exact;
    let g = j.column_count();
    if r + 1 == g {
        let mut reps: Vec<usize> = Vec::new();
        for c in 0..g {
            if !reps.iter().any(|&d| j.generator_component[d] == j.generator_component[c]) {
                reps.push(c);
            }
        }
        let gcds = exec.map(reps, |c| deleted_column_minor_gcd(j, c, Exec::Sequential));
        return gcd_all(gcds, j.nvars);
    }
    // Zero rows and columns contribute nothing to any nonzero minor.
    let rows: Vec<usize> = (0..j.row_count()).filter(|&i| j.rows[i].iter().any(|e| !e.is_zero())).collect();
    let cols: Vec<usize> = (0..g).filter(|&c| j.rows.iter().any(|row| !row[c].is_zero())).collect();
    if r == 0 {
        return LaurentPoly::one(j.nvars);
    }
    let mut jobs = Vec::new();
    for rs in subsets(rows.len(), r) {
        for cs in subsets(cols.len(), r) {
            jobs.push((rs.clone(), cs));
        }
    }
    let minors = exec.map(jobs, |(rs, cs)| {
        let ri: Vec<usize> = rs.iter().map(|&i| rows[i]).collect();
        let ci: Vec<usize> = cs.iter().map(|&i| cols[i]).collect();
        matrix::determinant(&submatrix(&j.rows, &ri, &ci), j.nvars)
    });
    gcd_all(minors, j.nvars)
}

impl AlexanderData {
    pub fn compute(d: &LinkDiagram, exec: Exec) -> AlexanderData {
        Self::from_jacobian(&d.fox_jacobian(), exec)
    }

    pub fn from_jacobian(j: &FoxJacobian, exec: Exec) -> AlexanderData {
        let beta = rank_beta(j);
        let delta = alexander_multivariable(j, exec);
        let delta_tor = torsion_alexander(j, exec);
        AlexanderData { components: j.nvars, beta, delta, delta_tor }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::laurent::parse_poly;

    fn data(code: &str) -> AlexanderData {
        AlexanderData::compute(&parse_pd(code).unwrap(), Exec::Sequential)
    }

    #[test]
    fn trefoil_and_hopf() {
        let t = data("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]");
        assert_eq!(t.beta, 0);
        assert_eq!(t.delta, parse_poly("t1^2 - t1 + 1", Some(1)).unwrap());
        assert_eq!(t.delta_tor, t.delta);
        let h = data("X[4,1,3,2],X[2,3,1,4]");
        assert_eq!(h.beta, 0);
        assert!(h.delta.is_one());
        assert!(h.delta_tor.is_one());
    }

    #[test]
    fn unlinks() {
        for m in 1..=4 {
            let a = AlexanderData::compute(&LinkDiagram::unlink(m), Exec::Sequential);
            assert_eq!(a.beta, m - 1);
            assert_eq!(a.delta.is_zero(), m > 1);
            assert!(a.delta_tor.is_one());
        }
    }

    #[test]
    fn split_trefoils() {
        let a = data("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3],X[7,10,8,11],X[9,12,10,7],X[11,8,12,9]");
        assert_eq!(a.beta, 1);
        assert!(a.delta.is_zero());
        assert_eq!(a.delta_tor, parse_poly("(t1^2-t1+1)(t2^2-t2+1)", Some(2)).unwrap());
    }
}
