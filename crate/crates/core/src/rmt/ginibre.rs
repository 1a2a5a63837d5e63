use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::{barnes_g, binomial, factorial, factorial_product, factorial_schur, kostka, partitions};
use crate::error::{Error, Result};
use crate::evaluators::eval_det_kostka;
use crate::exact::{MultiPoly, Registry, Scalar};
use crate::jets::KernelJet;
use crate::rmt::{MomentResult, Prefactor};

/// Kernel jet at `(chi, conj chi)` with its transcendental factor split off.
#[derive(Clone, Debug, PartialEq)]
pub struct GinibreJet {
    pub jet: KernelJet,
    pub prefactor: Prefactor,
}

fn rational(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

fn gin_prefactor(k: usize) -> Prefactor {
    Prefactor { exp_coeff: k as i64, pi_power: -(k as i64), one_minus_t_power: 0 }
}

/// Jet of `(1/pi) sum_{j<N} (x y)^j / j!` (finite `n`) or of `(1/pi) e^{xy}`
/// (`n = None`). The `1/pi` and, for the limit, `e^{|chi|^2}` are moved to
/// the prefactor.
pub fn ginibre_jet(n: Option<u64>, chi: &Scalar, order: usize) -> Result<GinibreJet> {
    let bar = chi.conj();
    match n {
        Some(0) => Err(Error::pre("Ginibre kernel needs N >= 1")),
        Some(n) => {
            let reg = Registry::new(["x", "y"]);
            let mut p = MultiPoly::zero(&reg);
            for j in 0..n {
                p.add_term(vec![j as u32, j as u32], Scalar::real(rational(BigInt::one(), factorial(j))));
            }
            let jet = KernelJet::from_poly(&p, (chi, &bar), order)?;
            Ok(GinibreJet { jet, prefactor: Prefactor { exp_coeff: 0, pi_power: -1, one_minus_t_power: 0 } })
        }
        None => {
            // d_u^a d_v^b e^{uv} = e^{uv} sum_i C(a,i) b!/(b-i)! u^{b-i} v^{a-i}
            let cp: Vec<Scalar> = (0..=order).map(|e| chi.pow(e as u32)).collect();
            let bp: Vec<Scalar> = (0..=order).map(|e| bar.pow(e as u32)).collect();
            let coeffs = (0..=order)
                .map(|a| {
                    (0..=order)
                        .map(|b| {
                            let mut s = Scalar::zero();
                            for i in 0..=a.min(b) {
                                let w = binomial(a as i64, i as i64) * factorial(b as u64) / factorial((b - i) as u64);
                                s += &(&cp[b - i] * &bp[a - i] * Scalar::big(w));
                            }
                            s.scale(&rational(BigInt::one(), factorial(a as u64) * factorial(b as u64)))
                        })
                        .collect()
                })
                .collect();
            Ok(GinibreJet {
                jet: KernelJet::new((chi.clone(), bar), coeffs)?,
                prefactor: Prefactor { exp_coeff: 1, pi_power: -1, one_minus_t_power: 0 },
            })
        }
    }
}

fn check_alpha(k: usize, alpha: &[u32]) -> Result<()> {
    if k == 0 {
        return Err(Error::pre("k must be at least 1"));
    }
    if alpha.len() > k {
        return Err(Error::pre(format!("weight vector has {} entries for k = {k}", alpha.len())));
    }
    Ok(())
}

/// Mixed moment of `|d^{alpha_j} D_N(chi)|^2` as `N -> infinity`, normalised
/// by `prod_{j=N}^{N+k-1} pi j!`:
/// `alpha!^2 sum_m t^m sum_{nu |- |alpha|-m} (1/nu^!) (sum_lambda K_{lambda,alpha}
/// Delta(lambda^)/lambda^! t_nu(lambda^))^2`.
pub fn ginibre_moment_general(k: usize, alpha: &[u32]) -> Result<MomentResult> {
    check_alpha(k, alpha)?;
    let a: u32 = alpha.iter().sum();
    let lams: Vec<_> = partitions(a, k)
        .into_iter()
        .map(|lam| -> Result<_> {
            let kn = kostka(&lam, alpha)?;
            let hat = lam.shifted(k)?;
            let w = rational(kn * hat.vandermonde(), hat.factorial());
            Ok((hat.as_i64(), w))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, w)| !w.is_zero())
        .collect();
    let af = factorial_product(&alpha.iter().map(|&x| x as u64).collect::<Vec<_>>());
    let af2 = BigRational::from_integer(&af * &af);
    let poly_t = (0..=a)
        .into_par_iter()
        .map(|m| -> Result<BigRational> {
            let mut c = BigRational::zero();
            for nu in partitions(a - m, k) {
                let mut s = BigRational::zero();
                for (pts, w) in &lams {
                    s += w * factorial_schur(&nu, pts)?;
                }
                c += &s * &s / BigRational::from_integer(nu.shifted(k)?.factorial());
            }
            Ok(c * &af2)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentResult { k, prefactor: gin_prefactor(k), poly_t })
}

/// `|D|^{2h} |D'|^{2(k-h)}` moment via the explicit first-derivative formula.
pub fn ginibre_moment_first(k: usize, h: usize) -> Result<MomentResult> {
    if k == 0 || h > k {
        return Err(Error::pre("need 1 <= k and 0 <= h <= k"));
    }
    let l = k - h;
    let gk1 = BigRational::from_integer(barnes_g(k as u64 + 1));
    let mut out = vec![BigRational::zero(); l + 1];
    if l >= 2 {
        let ones = vec![1u32; l];
        let lams: Vec<(Vec<i64>, BigRational)> = partitions(l as u32, l)
            .into_iter()
            .map(|lam| -> Result<_> {
                let kn = kostka(&lam, &ones)?;
                Ok((lam.shifted(l)?.as_i64(), BigRational::from_integer(&kn * &kn)))
            })
            .collect::<Result<_>>()?;
        let lf = factorial(l as u64);
        let norm = BigRational::from_integer(&lf * &lf * barnes_g(h as u64 + 1));
        for (m, slot) in out.iter_mut().enumerate().take(l - 1) {
            let mut c = BigRational::zero();
            for nu in partitions((l - m) as u32, l) {
                let den: BigInt = (1..=l).map(|j| factorial((nu.part(j - 1) as usize + k - j) as u64)).product();
                let mut s = BigRational::zero();
                for (pts, w) in &lams {
                    s += w * factorial_schur(&nu, pts)?;
                }
                c += &s * &s / BigRational::from_integer(den);
            }
            *slot = c / &norm;
        }
    }
    if l >= 1 {
        out[l - 1] += BigRational::new(BigInt::from(l * l), BigInt::from(k)) / &gk1;
    }
    out[l] += BigRational::one() / &gk1;
    Ok(MomentResult { k, prefactor: gin_prefactor(k), poly_t: out })
}

/// `alpha = (n, 0, ..., 0)`: `n!^2 / ((n+k-1)! G(k)) L_{n+k-1,n}(-t)`.
pub fn ginibre_moment_one_higher(k: usize, n: u32) -> Result<MomentResult> {
    check_alpha(k, &[])?;
    let a = n as u64 + k as u64 - 1;
    let nf = factorial(n as u64);
    let pre = rational(&nf * &nf, factorial(a) * barnes_g(k as u64));
    let poly_t = (0..=n as u64)
        .map(|m| &pre * rational(binomial(a as i64, m as i64), factorial(m)))
        .collect();
    Ok(MomentResult { k, prefactor: gin_prefactor(k), poly_t })
}

fn binom0(n: i64, r: i64) -> BigInt {
    if r < 0 || r > n {
        BigInt::zero()
    } else {
        binomial(n, r)
    }
}

/// `alpha = (n1, n2, 0, ..., 0)` with `n1 >= n2`, `k >= 2`.
pub fn ginibre_moment_two_higher(k: usize, n1: u32, n2: u32) -> Result<MomentResult> {
    if k < 2 || n2 > n1 {
        return Err(Error::pre("need k >= 2 and n1 >= n2"));
    }
    let (n1, n2, k) = (n1 as i64, n2 as i64, k as i64);
    let f1 = factorial(n1 as u64);
    let f2 = factorial(n2 as u64);
    let pre = rational(&f1 * &f1 * &f2 * &f2, barnes_g(k as u64 - 1));
    let poly_t = (0..=n1 + n2)
        .map(|m| {
            let mut c = BigRational::zero();
            for r in 0..=(n1 + n2 - m) / 2 {
                let inner: BigInt =
                    (0..=n2).map(|s| binom0(m, s - r) - binom0(m, n1 + n2 - s - r + 1)).sum();
                let den = factorial((r + k - 2) as u64) * factorial((n1 + n2 - m - r + k - 1) as u64);
                c += rational(&inner * &inner, den);
            }
            let mf = factorial(m as u64);
            c * &pre / BigRational::from_integer(&mf * &mf)
        })
        .collect();
    Ok(MomentResult { k: k as usize, prefactor: gin_prefactor(k as usize), poly_t })
}

/// The same moment through the general determinant evaluator: the
/// `N -> infinity` jet with `e^{t}/pi` stripped, fed to the Kostka route
/// with `beta = alpha`. Returns the polynomial part at `t = |chi|^2`.
pub fn ginibre_via_evaluator(k: usize, alpha: &[u32], chi: &Scalar) -> Result<Scalar> {
    check_alpha(k, alpha)?;
    let mut full = alpha.to_vec();
    full.resize(k, 0);
    let a: u32 = full.iter().sum();
    let g = ginibre_jet(None, chi, a as usize + k - 1)?;
    eval_det_kostka(&g.jet, &full, &full, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn limit_jet_first_mixed() {
        let chi = Scalar::ratio(1, 2);
        let g = ginibre_jet(None, &chi, 2).unwrap();
        // d_u d_v e^{uv} / e^{uv} = 1 + uv
        assert_eq!(g.jet.coeffs[1][1], Scalar::ratio(5, 4));
        assert_eq!(g.jet.coeffs[0][0], Scalar::one());
    }

    #[test]
    fn finite_jet_matches_termwise() {
        let chi = Scalar::new(r(1, 3), r(1, 2));
        let g = ginibre_jet(Some(4), &chi, 2).unwrap();
        // d_u d_v of sum_{j<4} (uv)^j/j! = sum_{1<=j<4} j^2 (uv)^{j-1}/j!
        let t = &chi * &chi.conj();
        let want = Scalar::one() + &t * Scalar::int(2) + t.pow(2) * Scalar::ratio(3, 2);
        assert_eq!(g.jet.coeffs[1][1], want);
    }

    #[test]
    fn no_derivative_is_barnes() {
        for k in 1..=4 {
            let m = ginibre_moment_general(k, &[]).unwrap();
            assert_eq!(m.poly_t, vec![BigRational::one() / BigRational::from_integer(barnes_g(k as u64 + 1))]);
        }
    }

    #[test]
    fn one_higher_example() {
        // k = 1, n = 2: 2 (1 + 2t + t^2/2)
        let m = ginibre_moment_one_higher(1, 2).unwrap();
        assert_eq!(m.poly_t, vec![r(2, 1), r(4, 1), r(1, 1)]);
        let f = ginibre_moment_first(1, 0).unwrap();
        assert_eq!(f.poly_t, vec![r(1, 1), r(1, 1)]);
    }
}
