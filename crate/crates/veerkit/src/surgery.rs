//! Triple point accounting for horizontal, vertical and concurrent halved
//! surgery, and tetrahedron/edge counts for Montesinos link complements.

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::CheckedAdd;
use serde::Serialize;
use std::fmt;

/// Exact rational used for the e-invariant and Montesinos labels.
pub type Rational = Ratio<i128>;

/// Triple points added by `1/-k` horizontal surgery between curves met by
/// `n1` and `n2` branches.
pub fn added_triple_points_horizontal(n1: u64, n2: u64, k: u64) -> u64 {
    k * n1 * n2
}

/// Triple points added by `1/-k` vertical surgery.
pub fn added_triple_points_vertical(n1: u64, n2: u64, k: u64) -> u64 {
    k * n1 * n2
}

/// Data of a system of connecting annuli with surgery coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgerySystem {
    pub n: Vec<u64>,
    pub m: Vec<u64>,
    pub q: Vec<Vec<u64>>,
    pub k: Vec<u64>,
}

impl SurgerySystem {
    pub fn new(n: Vec<u64>, m: Vec<u64>, q: Vec<Vec<u64>>, k: Vec<u64>) -> Result<Self> {
        let s = n.len();
        if m.len() != s || k.len() != s || q.len() != s || q.iter().any(|r| r.len() != s) {
            return Err(Error::InvalidParameters("n, m, q, k have mismatched sizes".into()));
        }
        for i in 0..s {
            if q[i][i] != 0 {
                return Err(Error::InvalidParameters(format!("q[{i}][{i}] must be 0")));
            }
            for j in 0..s {
                if q[i][j] != q[j][i] {
                    return Err(Error::InvalidParameters(format!("q is not symmetric at ({i}, {j})")));
                }
                if !(q[i][j] * n[i] * n[j]).is_multiple_of(4) {
                    return Err(Error::InvalidParameters(format!("q[{i}][{j}] n_i n_j is not divisible by 4")));
                }
            }
        }
        Ok(Self { n, m, q, k })
    }

    /// Builds the system from C and d directly, taking every n_i = 2.
    pub fn from_matrix(c: Vec<Vec<u64>>, d: Vec<u64>, k: Vec<u64>) -> Result<Self> {
        if d.iter().any(|x| x % 2 != 0) {
            return Err(Error::InvalidParameters("d_i must be even when n_i = 2".into()));
        }
        let s = d.len();
        Self::new(vec![2; s], d.iter().map(|x| x / 2).collect(), c, k)
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    /// `c_ij = q_ij n_i n_j / 4`.
    pub fn c(&self) -> Vec<Vec<u64>> {
        let s = self.len();
        (0..s).map(|i| (0..s).map(|j| self.q[i][j] * self.n[i] * self.n[j] / 4).collect()).collect()
    }

    /// `d_i = n_i m_i`.
    pub fn d(&self) -> Vec<u64> {
        self.n.iter().zip(&self.m).map(|(a, b)| a * b).collect()
    }

    /// `k^T (C k + d)`.
    pub fn quadratic_form(&self) -> u64 {
        let c = self.c();
        let d = self.d();
        let s = self.len();
        (0..s)
            .map(|i| self.k[i] * ((0..s).map(|j| c[i][j] * self.k[j]).sum::<u64>() + d[i]))
            .sum()
    }
}

/// Triple points added by concurrent surgery on the system; with `halved`,
/// the count on the quotient by the involution.
pub fn added_triple_points_concurrent(s: &SurgerySystem, halved: bool) -> Result<u64> {
    let full = s.quadratic_form();
    if !halved {
        return Ok(full);
    }
    if !full.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("halved count {full}/2 is not an integer")));
    }
    Ok(full / 2)
}

/// Cone orders of a genus zero orbifold, read cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MontesinosParams {
    p: Vec<u64>,
}

impl MontesinosParams {
    pub fn new(p: Vec<u64>) -> Result<Self> {
        if p.len() < 3 {
            return Err(Error::InvalidParameters(format!("need at least 3 cone points, got {}", p.len())));
        }
        if let Some(x) = p.iter().find(|&&x| x < 2) {
            return Err(Error::InvalidParameters(format!("cone order {x} is below 2")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> &[u64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

impl fmt::Display for MontesinosParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.p.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl std::str::FromStr for MontesinosParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let p = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| Error::InvalidParameters(format!("bad cone order {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TriangulationStats {
    pub tets: u64,
    pub blue: u64,
    pub red: u64,
}

impl TriangulationStats {
    fn from_colours(blue: u64, red: u64) -> Self {
        Self { tets: blue + red, blue, red }
    }
}

fn overflow() -> Error {
    Error::InvalidParameters("rational overflow".into())
}

/// `e = sum 1/p_i - n + 2`.
pub fn euler_e(p: &MontesinosParams) -> Result<Rational> {
    let mut e = Rational::from_integer(2 - p.len() as i128);
    for &x in &p.p {
        e = e.checked_add(&Rational::new(1, x as i128)).ok_or_else(overflow)?;
    }
    Ok(e)
}

/// Lexicographic minimum over cyclic rotations and reversals.
pub fn canonicalize(p: &MontesinosParams) -> MontesinosParams {
    let n = p.len();
    let mut best = p.p.clone();
    let mut rev = p.p.clone();
    rev.reverse();
    for base in [&p.p, &rev] {
        for r in 0..n {
            let cand: Vec<u64> = (0..n).map(|i| base[(i + r) % n]).collect();
            if cand < best {
                best = cand;
            }
        }
    }
    MontesinosParams { p: best }
}

/// `(1/p_1 + 1, 1/p_2 - 1, ..., 1/p_n - 1)`.
pub fn montesinos_label(p: &MontesinosParams) -> Vec<Rational> {
    p.p.iter()
        .enumerate()
        .map(|(i, &x)| Rational::new(1, x as i128) + Rational::from_integer(if i == 0 { 1 } else { -1 }))
        .collect()
}

/// Which counting formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// (2, 3, 6+k)
    TwoThree,
    /// (2, 4+k1, 4+k2)
    TwoFour,
    /// (3+k1, 3+k2, 3+k3)
    Three,
    /// (2+k1, ..., 2+kn) with n >= 4
    General,
}

fn require_hyperbolic(p: &MontesinosParams) -> Result<()> {
    let e = euler_e(p)?;
    if e >= Rational::from_integer(0) {
        return Err(Error::InvalidParameters(format!("not Anosov-admissible: e = {e} is not negative")));
    }
    Ok(())
}

/// Family and surgery coefficients of `p`. For three cone points the
/// coefficients refer to the sorted orders.
pub fn classify(p: &MontesinosParams) -> Result<(Family, Vec<u64>)> {
    require_hyperbolic(p)?;
    if p.len() >= 4 {
        return Ok((Family::General, p.p.iter().map(|x| x - 2).collect()));
    }
    let mut s = p.p.clone();
    s.sort_unstable();
    match (s[0], s[1]) {
        (2, 3) => Ok((Family::TwoThree, vec![s[2] - 6])),
        (2, _) => Ok((Family::TwoFour, vec![s[1] - 4, s[2] - 4])),
        _ => Ok((Family::Three, s.iter().map(|x| x - 3).collect())),
    }
}

fn cyclic_distance(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(n - d)
}

/// Predicted tetrahedron and edge colour counts of the veering
/// triangulation of the Montesinos link complement.
pub fn predict_stats(p: &MontesinosParams) -> Result<TriangulationStats> {
    let (family, k) = classify(p)?;
    Ok(match family {
        Family::TwoThree => TriangulationStats::from_colours(2 * k[0], 1),
        Family::TwoFour => TriangulationStats::from_colours(k[0] * k[1] + 2 * k[0] + 2 * k[1], 2),
        Family::Three => {
            let pairs = k[0] * k[1] + k[0] * k[2] + k[1] * k[2];
            TriangulationStats::from_colours(pairs + 2 * (k[0] + k[1] + k[2]), 3)
        }
        Family::General => {
            let n = k.len();
            let n64 = n as u64;
            // sums over ordered pairs i != j
            let mut adjacent = 0;
            let mut far = 0;
            for i in 0..n {
                for j in 0..n {
                    match cyclic_distance(i, j, n) {
                        0 => {}
                        1 => adjacent += k[i] * k[j],
                        _ => far += k[i] * k[j],
                    }
                }
            }
            let sum: u64 = k.iter().sum();
            let blue = adjacent / 2 + far + 2 * (n64 - 3) * sum + n64 * (n64 - 4);
            TriangulationStats::from_colours(blue, n64)
        }
    })
}

/// The surgery system used for the n >= 4 family: n_i = 2,
/// m_i = 2(n - 3), q_ij = 1 for cyclically adjacent i, j and 2 otherwise.
pub fn general_family_system(p: &MontesinosParams) -> Result<SurgerySystem> {
    let n = p.len();
    if n < 4 {
        return Err(Error::InvalidParameters("the cyclic system needs at least 4 cone points".into()));
    }
    let q = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match cyclic_distance(i, j, n) {
                    0 => 0,
                    1 => 1,
                    _ => 2,
                })
                .collect()
        })
        .collect();
    let m = 2 * (n as u64 - 3);
    SurgerySystem::new(vec![2; n], vec![m; n], q, p.p.iter().map(|x| x - 2).collect())
}

/// Counts for the n >= 4 family obtained from the base branched surface
/// (n(n-4) blue, n red triple points after halving) plus the halved
/// concurrent surgery count.
pub fn stats_via_surgery(p: &MontesinosParams) -> Result<TriangulationStats> {
    require_hyperbolic(p)?;
    let sys = general_family_system(p)?;
    let n = p.len() as u64;
    let added = added_triple_points_concurrent(&sys, true)?;
    Ok(TriangulationStats::from_colours(n * (n - 4) + added, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: &[u64]) -> MontesinosParams {
        MontesinosParams::new(p.to_vec()).unwrap()
    }

    #[test]
    fn simple_products() {
        assert_eq!(added_triple_points_horizontal(2, 2, 5), 20);
        assert_eq!(added_triple_points_horizontal(4, 9, 0), 0);
        assert_eq!(added_triple_points_horizontal(3, 5, 2), 30);
        assert_eq!(added_triple_points_vertical(2, 2, 1), 4);
        assert_eq!(added_triple_points_vertical(1, 1, 7), 7);
        assert_eq!(added_triple_points_vertical(0, 5, 3), 0);
    }

    #[test]
    fn e_values() {
        assert_eq!(euler_e(&mp(&[2, 3, 6])).unwrap(), Rational::from_integer(0));
        assert_eq!(euler_e(&mp(&[2, 3, 7])).unwrap(), Rational::new(-1, 42));
        assert_eq!(euler_e(&mp(&[2, 2, 2, 2])).unwrap(), Rational::from_integer(0));
    }

    #[test]
    fn rejects_bad_params() {
        assert!(MontesinosParams::new(vec![2, 3]).is_err());
        assert!(MontesinosParams::new(vec![1, 3, 7]).is_err());
        let err = predict_stats(&mp(&[2, 3, 6])).unwrap_err();
        assert!(err.to_string().contains("not Anosov-admissible"));
        assert!(predict_stats(&mp(&[2, 2, 2, 2])).is_err());
        assert!(predict_stats(&mp(&[3, 3, 3])).is_err());
    }

    #[test]
    fn parse_params() {
        assert_eq!("2,3,7".parse::<MontesinosParams>().unwrap(), mp(&[2, 3, 7]));
        assert_eq!("(2, 6,6)".parse::<MontesinosParams>().unwrap(), mp(&[2, 6, 6]));
        assert!("2,x,7".parse::<MontesinosParams>().is_err());
    }

    #[test]
    fn system_validation() {
        assert!(SurgerySystem::new(vec![2, 2], vec![1, 1], vec![vec![1, 1], vec![1, 0]], vec![0, 0]).is_err());
        assert!(SurgerySystem::new(vec![2, 2], vec![1, 1], vec![vec![0, 1], vec![2, 0]], vec![0, 0]).is_err());
        assert!(SurgerySystem::new(vec![1, 1], vec![1, 1], vec![vec![0, 1], vec![1, 0]], vec![0, 0]).is_err());
        let s = SurgerySystem::new(vec![1, 3], vec![1, 1], vec![vec![0, 0], vec![0, 0]], vec![1, 0]).unwrap();
        assert_eq!(added_triple_points_concurrent(&s, false).unwrap(), 1);
        assert!(added_triple_points_concurrent(&s, true).is_err());
    }

    #[test]
    fn case_dispatch() {
        assert_eq!(classify(&mp(&[7, 2, 3])).unwrap(), (Family::TwoThree, vec![1]));
        assert_eq!(classify(&mp(&[2, 5, 4])).unwrap(), (Family::TwoFour, vec![0, 1]));
        assert_eq!(classify(&mp(&[4, 3, 3])).unwrap(), (Family::Three, vec![0, 0, 1]));
        assert_eq!(classify(&mp(&[2, 2, 3, 3])).unwrap(), (Family::General, vec![0, 0, 1, 1]));
    }
}
