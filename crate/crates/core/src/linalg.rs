//! Determinants over the coefficient rings used in the crate.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::jet::JetPolynomial;
use crate::scalar::QComplex;

/// Ring operations needed for cofactor expansion.
pub trait DetRing: Clone {
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl DetRing for JetPolynomial {
    fn zero() -> Self {
        JetPolynomial::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

macro_rules! det_ring_num {
    ($t:ty) => {
        impl DetRing for $t {
            fn zero() -> Self {
                <$t as Zero>::zero()
            }
            fn add(&self, o: &Self) -> Self {
                self.clone() + o.clone()
            }
            fn mul(&self, o: &Self) -> Self {
                self.clone() * o.clone()
            }
            fn neg(&self) -> Self {
                -self.clone()
            }
        }
    };
}

det_ring_num!(QComplex);
det_ring_num!(Complex64);
det_ring_num!(BigRational);

/// Laplace expansion along the first row. Intended for `n ≤ 6`.
pub fn cofactor_det<T: DetRing>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    assert!(n > 0, "determinant of an empty matrix");
    let cols: Vec<usize> = (0..n).collect();
    expand(m, 0, &cols)
}

fn expand<T: DetRing>(m: &[Vec<T>], row: usize, cols: &[usize]) -> T {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = T::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m[row][c].mul(&expand(m, row + 1, &rest));
        acc = if pos % 2 == 0 { acc.add(&term) } else { acc.add(&term.neg()) };
    }
    acc
}

/// Exact determinant by Gaussian elimination over ℚ.
pub fn rational_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return <BigRational as Zero>::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Mersenne prime used for the modular screen in [`all_maximal_minors_nonzero`].
const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let r = (p as u64 & PRIME) + (p >> 61) as u64;
    let r = (r & PRIME) + (r >> 61);
    if r >= PRIME {
        r - PRIME
    } else {
        r
    }
}

fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

/// Row with denominators cleared, reduced modulo [`PRIME`].
fn residues(row: &[BigRational]) -> Vec<u64> {
    let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let p = BigInt::from(PRIME);
    row.iter()
        .map(|q| {
            let v = (q.numer() * (&l / q.denom())).mod_floor(&p);
            v.to_u64().expect("residue fits in u64")
        })
        .collect()
}

/// Reduces `v` against an echelon basis; returns the new pivot column, or
/// `None` if `v` reduces to zero.
fn reduce(v: &mut [u64], basis: &[(usize, Vec<u64>)]) -> Option<usize> {
    for (pc, b) in basis {
        let f = v[*pc];
        if f == 0 {
            continue;
        }
        let g = b[*pc];
        for (x, y) in v.iter_mut().zip(b) {
            *x = submod(mulmod(*x, g), mulmod(*y, f));
        }
    }
    v.iter().position(|&x| x != 0)
}

fn dot(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).fold(0, |acc, (x, y)| {
        let t = acc + mulmod(*x, *y);
        if t >= PRIME {
            t - PRIME
        } else {
            t
        }
    })
}

/// Nonzero vector orthogonal to the `k − 1` rows of an echelon basis in
/// `k` columns, by fraction-free back substitution.
fn kernel(basis: &[(usize, Vec<u64>)], k: usize) -> Vec<u64> {
    let mut pivot = vec![false; k];
    for (pc, _) in basis {
        pivot[*pc] = true;
    }
    let mut w = vec![0u64; k];
    w[pivot.iter().position(|p| !p).expect("one free column")] = 1;
    for (pc, b) in basis.iter().rev() {
        let g = b[*pc];
        let rest = dot(b, &w);
        for x in w.iter_mut() {
            *x = mulmod(*x, g);
        }
        w[*pc] = submod(0, rest);
    }
    w
}

/// True iff every `k`-row minor of the `k`-column matrix `rows` is
/// nonzero. Subsets are screened depth-first modulo a large prime (nonzero
/// residue certifies a nonzero determinant); only subsets whose residue
/// vanishes are decided by exact elimination over ℚ.
pub fn all_maximal_minors_nonzero(rows: &[Vec<BigRational>], k: usize) -> bool {
    struct Search<'a> {
        rows: &'a [Vec<BigRational>],
        res: Vec<Vec<u64>>,
        k: usize,
        stack: Vec<usize>,
    }

    impl Search<'_> {
        fn exact_completions(&mut self, start: usize) -> bool {
            if self.stack.len() == self.k {
                let m: Vec<Vec<BigRational>> =
                    self.stack.iter().map(|&i| self.rows[i].clone()).collect();
                return !rational_det(&m).is_zero();
            }
            for i in start..self.rows.len() {
                if self.rows.len() - i < self.k - self.stack.len() {
                    break;
                }
                self.stack.push(i);
                let ok = self.exact_completions(i + 1);
                self.stack.pop();
                if !ok {
                    return false;
                }
            }
            true
        }

        fn go(&mut self, start: usize, basis: &mut Vec<(usize, Vec<u64>)>) -> bool {
            if basis.len() + 1 == self.k {
                let w = kernel(basis, self.k);
                for i in start..self.rows.len() {
                    if dot(&w, &self.res[i]) == 0 {
                        self.stack.push(i);
                        let ok = self.exact_completions(i + 1);
                        self.stack.pop();
                        if !ok {
                            return false;
                        }
                    }
                }
                return true;
            }
            for i in start..self.rows.len() {
                if self.rows.len() - i < self.k - basis.len() {
                    break;
                }
                let mut v = self.res[i].clone();
                self.stack.push(i);
                let ok = match reduce(&mut v, basis) {
                    Some(pc) => {
                        basis.push((pc, v));
                        let ok = self.go(i + 1, basis);
                        basis.pop();
                        ok
                    }
                    None => self.exact_completions(i + 1),
                };
                self.stack.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
    }

    if rows.len() < k {
        return true;
    }
    let mut s = Search {
        rows,
        res: rows.iter().map(|r| residues(r)).collect(),
        k,
        stack: Vec::with_capacity(k),
    };
    s.go(0, &mut Vec::with_capacity(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn r(v: i64) -> BigRational {
        rat(v, 1)
    }

    #[test]
    fn small_determinants_agree() {
        let m = vec![
            vec![r(2), r(-1), r(0)],
            vec![r(1), r(3), r(4)],
            vec![r(0), r(5), r(-2)],
        ];
        // 2(3*-2 - 20) + 1(-2 - 0) = -52 - 2
        assert_eq!(rational_det(&m), r(-54));
        assert_eq!(cofactor_det(&m), r(-54));
        let singular = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert_eq!(rational_det(&singular), r(0));
    }

    #[test]
    fn row_swap_needed() {
        let m = vec![vec![r(0), r(1)], vec![r(1), r(0)]];
        assert_eq!(rational_det(&m), r(-1));
    }

    #[test]
    fn subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn minor_screen_matches_exhaustive_check() {
        let grid: Vec<Vec<BigRational>> = (1..=7)
            .map(|t| vec![r(1), r(t), r(t * t), rat(1, t)])
            .collect();
        let exhaustive = |rows: &[Vec<BigRational>]| {
            combinations(rows.len(), 4).iter().all(|s| {
                !rational_det(&s.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>()).is_zero()
            })
        };
        assert_eq!(all_maximal_minors_nonzero(&grid, 4), exhaustive(&grid));
        let mut dependent = grid.clone();
        dependent.push(vec![r(2), r(3), r(5), r(0)]);
        dependent.push(vec![r(3), r(4), r(7), r(0)]);
        dependent.push(vec![r(5), r(7), r(12), r(0)]);
        assert!(!exhaustive(&dependent));
        assert!(!all_maximal_minors_nonzero(&dependent, 4));
        // Entries that vanish modulo the screening prime force the exact path.
        let p = BigRational::from_integer(BigInt::from(PRIME));
        let sneaky = vec![vec![p.clone(), r(0)], vec![r(0), r(1)], vec![r(1), r(1)]];
        assert!(all_maximal_minors_nonzero(&sneaky, 2));
    }

    #[test]
    fn minor_screen_on_small_sign_matrices() {
        let vecs: Vec<Vec<BigRational>> = (0..27)
            .map(|c| vec![r(c % 3 - 1), r(c / 3 % 3 - 1), r(c / 9 - 1)])
            .collect();
        for s in combinations(27, 4).iter().step_by(7) {
            let rows: Vec<Vec<BigRational>> = s.iter().map(|&i| vecs[i].clone()).collect();
            let exhaustive = combinations(4, 3).iter().all(|t| {
                !rational_det(&t.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>()).is_zero()
            });
            assert_eq!(all_maximal_minors_nonzero(&rows, 3), exhaustive, "{s:?}");
        }
    }
}
