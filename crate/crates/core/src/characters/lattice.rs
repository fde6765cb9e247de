//! Positive-definite integral lattices and exact theta series of their cosets.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::eta_quotient;
use crate::rational::{denom_u64, Rational};
use crate::series::PuiseuxSeries;

/// Enumeration runs in exact `i128` rationals; entries stay tiny for root-lattice data.
type Q = Ratio<i128>;

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralLattice {
    pub gram: Vec<Vec<i64>>,
    /// A representative of the coset, in the coordinates of the Gram basis.
    pub coset_offset: Vec<Rational>,
}

struct Ldl {
    d: Vec<Q>,
    /// `m[i][j]` for `j > i`: `Q(y) = Σ_i d_i (y_i + Σ_{j>i} m_ij y_j)²`.
    m: Vec<Vec<Q>>,
}

fn to_q(r: &Rational) -> Q {
    Q::new(
        r.numer().to_i128().expect("small offset"),
        r.denom().to_i128().expect("small offset"),
    )
}

fn from_q(r: &Q) -> Rational {
    Rational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl IntegralLattice {
    pub fn new(gram: Vec<Vec<i64>>, coset_offset: Vec<Rational>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) || coset_offset.len() != n {
            return Err(Error::Parse(
                "gram must be square and match the offset length".into(),
            ));
        }
        if (0..n).any(|i| (0..n).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::NotPositiveDefinite);
        }
        let l = IntegralLattice { gram, coset_offset };
        l.ldl()?;
        Ok(l)
    }

    /// The same lattice with another coset representative.
    pub fn coset(&self, offset: Vec<Rational>) -> Result<Self> {
        IntegralLattice::new(self.gram.clone(), offset)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    fn ldl(&self) -> Result<Ldl> {
        let n = self.rank();
        let mut d = vec![Q::zero(); n];
        let mut m = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            let mut di = Q::from_integer(self.gram[i][i] as i128);
            for k in 0..i {
                di -= d[k] * m[k][i] * m[k][i];
            }
            if !di.is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
            d[i] = di;
            for j in i + 1..n {
                let mut v = Q::from_integer(self.gram[i][j] as i128);
                for k in 0..i {
                    v -= d[k] * m[k][i] * m[k][j];
                }
                m[i][j] = v / di;
            }
        }
        Ok(Ldl { d, m })
    }

    /// `⟨y, y⟩` for `y` in Gram coordinates.
    pub fn norm(&self, y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, yi) in y.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += yi * yj * Rational::from_integer(self.gram[i][j].into());
            }
        }
        acc
    }

    /// Counts of `⟨y,y⟩` over `y ∈ offset + ℤⁿ` with `⟨y,y⟩ ≤ bound`, by Fincke–Pohst.
    pub fn norm_counts(&self, bound: &Rational) -> Result<BTreeMap<Rational, u64>> {
        let ldl = self.ldl()?;
        let n = self.rank();
        let off: Vec<Q> = self.coset_offset.iter().map(to_q).collect();
        let r = to_q(bound);
        if n == 0 {
            return Ok(BTreeMap::from([(Rational::zero(), 1)]));
        }
        // split over the last coordinate for parallelism
        let top = n - 1;
        let tops: Vec<(Q, Q)> = interval(&ldl.d[top], &Q::zero(), &off[top], &r);
        let parts: Vec<BTreeMap<Q, u64>> = tops
            .into_par_iter()
            .map(|(yt, rem)| {
                let mut y = vec![Q::zero(); n];
                y[top] = yt;
                let mut out = BTreeMap::new();
                walk(&ldl, &off, top, &mut y, rem, &r, &mut out);
                out
            })
            .collect();
        let mut total: BTreeMap<Rational, u64> = BTreeMap::new();
        for p in parts {
            for (k, v) in p {
                *total.entry(from_q(&k)).or_insert(0) += v;
            }
        }
        Ok(total)
    }

    /// `min ⟨y,y⟩` over the coset.
    pub fn minimum(&self) -> Result<Rational> {
        let mut b = Rational::one();
        loop {
            if let Some((k, _)) = self.norm_counts(&b)?.into_iter().next() {
                return Ok(k);
            }
            b *= Rational::from_integer(2.into());
        }
    }
}

/// Admissible `y_i ∈ o + ℤ` with `d·(y_i − c)² ≤ r`, paired with the remaining budget.
fn interval(d: &Q, c: &Q, o: &Q, r: &Q) -> Vec<(Q, Q)> {
    let mut out = Vec::new();
    let start = (c - o).round().to_integer();
    for dir in [1i128, -1] {
        let mut v = if dir == 1 { start } else { start - 1 };
        loop {
            let y = Q::from_integer(v) + o;
            let t = y - c;
            let used = *d * t * t;
            if used > *r {
                break;
            }
            out.push((y, r - used));
            v += dir;
        }
    }
    out
}

fn walk(
    ldl: &Ldl,
    off: &[Q],
    level: usize,
    y: &mut Vec<Q>,
    rem: Q,
    total: &Q,
    out: &mut BTreeMap<Q, u64>,
) {
    if level == 0 {
        *out.entry(total - rem).or_insert(0) += 1;
        return;
    }
    let i = level - 1;
    let mut c = Q::zero();
    for (mij, yj) in ldl.m[i].iter().zip(y.iter()).skip(i + 1) {
        c -= *mij * *yj;
    }
    for (yi, r) in interval(&ldl.d[i], &c, &off[i], &rem) {
        y[i] = yi;
        walk(ldl, off, i, y, r, total, out);
    }
}

/// `Σ_{y ∈ offset+ℤⁿ} q^{⟨y,y⟩/2}`, complete for `order` whole powers of `q` past its leading term.
pub fn lattice_theta(l: &IntegralLattice, order: usize) -> Result<PuiseuxSeries> {
    let two = Rational::from_integer(2.into());
    let base = l.minimum()? / &two;
    let prec = &base + Rational::from_integer(BigInt::from(order as u64 + 1));
    let counts = l.norm_counts(&(&prec * &two))?;
    let terms: Vec<(Rational, u64)> = counts
        .into_iter()
        .map(|(n, c)| (n / &two, c))
        .filter(|(e, _)| e < &prec)
        .collect();
    let grid = terms
        .iter()
        .fold(1u64, |g, (e, _)| g.lcm(&denom_u64(&(e - &base))));
    let len = (order + 1) * grid as usize;
    let mut coeffs = vec![Rational::zero(); len];
    for (e, c) in terms {
        let idx = ((&e - &base) * Rational::from_integer(grid.into()))
            .to_integer()
            .to_usize()
            .unwrap();
        coeffs[idx] = Rational::from_integer(c.into());
    }
    Ok(PuiseuxSeries::new(base, grid, coeffs))
}

/// `θ_L / η^{rank}`.
pub fn lattice_voa_character(l: &IntegralLattice, order: usize) -> Result<PuiseuxSeries> {
    let theta = lattice_theta(l, order)?;
    Ok(theta.mul(&eta_quotient(&[(1, -(l.rank() as i64))], order)))
}

/// Exact inverse of a nonsingular integer matrix.
pub fn inverse(a: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational> = r
                .iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&i| !m[i][col].is_zero())
            .expect("nonsingular");
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot = m[col].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Cartan matrix of `A_n`.
pub fn cartan_a(n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = 2;
        if i + 1 < n {
            g[i][i + 1] = -1;
            g[i + 1][i] = -1;
        }
    }
    g
}

fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a - 1][b - 1] = -1;
        g[b - 1][a - 1] = -1;
    }
    g
}

/// Cartan matrix of `D_n` (Bourbaki labels: `n−1`, `n` are the spinor nodes).
pub fn cartan_d(n: usize) -> Vec<Vec<i64>> {
    let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
    e.pop();
    e.push((n - 2, n - 1));
    e.push((n - 2, n));
    from_edges(n, &e)
}

/// Cartan matrix of `E_7` (Bourbaki labels).
pub fn cartan_e7() -> Vec<Vec<i64>> {
    from_edges(7, &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)])
}

/// The fundamental weight `ω_k` (1-based) in simple-root coordinates.
pub fn fundamental_weight(cartan: &[Vec<i64>], k: usize) -> Vec<Rational> {
    inverse(cartan).iter().map(|r| r[k - 1].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn zero(n: usize) -> Vec<Rational> {
        vec![Rational::zero(); n]
    }

    #[test]
    fn sqrt2_lattice_is_theta() {
        let l = IntegralLattice::new(vec![vec![2]], zero(1)).unwrap();
        let t = lattice_theta(&l, 9).unwrap();
        let want = crate::forms::form_series(crate::forms::FormName::Theta, 9);
        assert!(t.agrees_with(&want));
        assert_eq!(t.coeff(&int(1)).unwrap(), int(2));
        assert_eq!(t.coeff(&int(4)).unwrap(), int(2));
    }

    #[test]
    fn coset_weight() {
        let l = IntegralLattice::new(vec![vec![6]], vec![rat(1, 6)]).unwrap();
        assert_eq!(lattice_theta(&l, 3).unwrap().base_exponent(), &rat(1, 12));
    }

    #[test]
    fn product_of_rank_one() {
        let g = vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]];
        let t3 = lattice_theta(&IntegralLattice::new(g, zero(3)).unwrap(), 8).unwrap();
        let t1 = lattice_theta(&IntegralLattice::new(vec![vec![2]], zero(1)).unwrap(), 8).unwrap();
        assert!(t3.agrees_with(&t1.mul(&t1).mul(&t1)));
    }

    #[test]
    fn root_counts() {
        // kissing numbers: 2·#positive roots
        for (g, roots) in [(cartan_a(5), 30u64), (cartan_d(6), 60), (cartan_e7(), 126)] {
            let n = g.len();
            let c = IntegralLattice::new(g, zero(n))
                .unwrap()
                .norm_counts(&int(2))
                .unwrap();
            assert_eq!(c[&int(2)], roots);
        }
    }

    #[test]
    fn not_positive_definite() {
        assert!(matches!(
            IntegralLattice::new(vec![vec![1, 2], vec![2, 1]], zero(2)),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn weight_norms() {
        let a5 = cartan_a(5);
        let l = IntegralLattice::new(a5.clone(), fundamental_weight(&a5, 1)).unwrap();
        assert_eq!(l.minimum().unwrap(), rat(5, 6));
        let e7 = cartan_e7();
        let l = IntegralLattice::new(e7.clone(), fundamental_weight(&e7, 7)).unwrap();
        assert_eq!(l.minimum().unwrap(), rat(3, 2));
    }
}
