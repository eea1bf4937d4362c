use std::fmt;
use std::str::FromStr;

use super::ring::{GeneratorKind, InvariantPolynomial, Presentation};
use super::series::{a_hat_log, cosh_half_log};
use crate::error::{Error, Result};
use crate::exact_algebra::{MultiPoly, Scalar};

/// Largest form degree the series constructions accept.
pub const MAX_FORM_DEGREE: u32 = 64;

/// A representation, described by its Chern character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepDescriptor {
    Trivial(u32),
    /// Defining representation of SO(n) or U(N).
    Vector,
    /// Dirac spinors of SO(n), of dimension 2^⌊n/2⌋.
    DiracSpinor,
    /// U(1) line of charge q.
    Charge(Scalar),
    /// ch = Σ c·Π_k P_k over the formal roots (squared roots for SO).
    /// Degree-0 terms, when present, must add up to `rank`.
    PowerSums { rank: u32, terms: Vec<(Scalar, Vec<u32>)> },
    Sum(Vec<RepDescriptor>),
}

impl RepDescriptor {
    pub fn rank(&self, presentation: &Presentation) -> Result<u32> {
        Ok(match self {
            RepDescriptor::Trivial(r) => *r,
            RepDescriptor::Vector => match presentation {
                Presentation::SpecialOrthogonal(n) | Presentation::Unitary(n) => *n,
                Presentation::Tensor(..) => return Err(tensor_target()),
            },
            RepDescriptor::DiracSpinor => 1 << presentation.roots(),
            RepDescriptor::Charge(_) => 1,
            RepDescriptor::PowerSums { rank, .. } => *rank,
            RepDescriptor::Sum(parts) => parts.iter().map(|p| p.rank(presentation)).sum::<Result<u32>>()?,
        })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RepDescriptor::PowerSums { rank, terms } => {
                if terms.iter().any(|(_, ks)| ks.contains(&0)) {
                    return Err(Error::Precondition("power sums are indexed from 1".into()));
                }
                let constant: Scalar = terms.iter().filter(|(_, ks)| ks.is_empty()).map(|(c, _)| c.clone()).sum();
                let has_constant = terms.iter().any(|(_, ks)| ks.is_empty());
                if has_constant && constant != Scalar::from(*rank) {
                    return Err(Error::Precondition(format!("degree-0 part {constant} of the character differs from rank {rank}")));
                }
                Ok(())
            }
            RepDescriptor::Sum(parts) => parts.iter().try_for_each(|p| p.validate()),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for RepDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepDescriptor::Trivial(r) => write!(f, "trivial:{r}"),
            RepDescriptor::Vector => write!(f, "vector"),
            RepDescriptor::DiracSpinor => write!(f, "dirac"),
            RepDescriptor::Charge(q) => write!(f, "charge:{q}"),
            RepDescriptor::PowerSums { rank, terms } => {
                write!(f, "ps:{rank}")?;
                for (c, ks) in terms {
                    write!(f, ":{c}")?;
                    for k in ks {
                        write!(f, "*P{k}")?;
                    }
                }
                Ok(())
            }
            RepDescriptor::Sum(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join("+"))
            }
        }
    }
}

impl FromStr for RepDescriptor {
    type Err = Error;

    /// `trivial:r`, `vector`, `dirac`, `charge:q`, `ps:rank:c*P1*P2:...`, joined by `+`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('+').map(str::trim).collect();
        if parts.len() > 1 {
            return Ok(RepDescriptor::Sum(parts.iter().map(|p| p.parse()).collect::<Result<_>>()?));
        }
        let bad = || Error::Precondition(format!("cannot read representation `{s}`"));
        let mut fields = s.trim().split(':');
        let head = fields.next().ok_or_else(bad)?;
        let rep = match head {
            "trivial" => RepDescriptor::Trivial(fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?),
            "vector" => RepDescriptor::Vector,
            "dirac" => RepDescriptor::DiracSpinor,
            "charge" => RepDescriptor::Charge(fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?),
            "ps" => {
                let rank = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let mut terms = Vec::new();
                for t in fields.by_ref() {
                    let mut it = t.split('*');
                    let c: Scalar = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                    let ks = it
                        .map(|p| p.strip_prefix('P').and_then(|k| k.parse().ok()).ok_or_else(bad))
                        .collect::<Result<Vec<u32>>>()?;
                    terms.push((c, ks));
                }
                RepDescriptor::PowerSums { rank, terms }
            }
            _ => return Err(bad()),
        };
        if fields.next().is_some() {
            return Err(bad());
        }
        rep.validate()?;
        Ok(rep)
    }
}

fn tensor_target() -> Error {
    Error::Precondition("characters are computed on a single factor; combine them with a tensor product".into())
}

fn check_degree(max_form_degree: u32) -> Result<()> {
    if max_form_degree > MAX_FORM_DEGREE {
        return Err(Error::Precondition(format!("form degree {max_form_degree} exceeds the supported bound {MAX_FORM_DEGREE}")));
    }
    Ok(())
}

/// Form degree of the power sum P_k of a plain presentation.
fn power_sum_degree(presentation: &Presentation) -> u32 {
    match presentation {
        Presentation::SpecialOrthogonal(_) => 4,
        _ => 2,
    }
}

/// Root power sums P_1..P_k written in the ring generators via Newton's identities,
/// with e_i(roots) = 0 beyond the number of roots.
pub fn power_sums(presentation: &Presentation, k_max: u32) -> Result<Vec<InvariantPolynomial>> {
    let kind = match presentation {
        Presentation::SpecialOrthogonal(_) => GeneratorKind::Pontryagin,
        Presentation::Unitary(_) => GeneratorKind::Chern,
        Presentation::Tensor(..) => return Err(tensor_target()),
    };
    let m = presentation.roots() as u32;
    let elementary = |i: u32| -> Result<Option<MultiPoly>> {
        if i == 0 || i > m {
            return Ok(None);
        }
        Ok(Some(InvariantPolynomial::generator(presentation, kind(i), 0)?.poly().clone()))
    };
    let mut ps: Vec<MultiPoly> = vec![MultiPoly::int(m as i64)];
    for k in 1..=k_max {
        let mut pk = MultiPoly::zero();
        for i in 1..k {
            if let Some(e) = elementary(i)? {
                let sign = if i % 2 == 1 { Scalar::one() } else { -Scalar::one() };
                pk = &pk + &(&e * &ps[(k - i) as usize]).scale(&sign);
            }
        }
        if let Some(e) = elementary(k)? {
            let c = Scalar::from(k) * if k % 2 == 1 { Scalar::one() } else { -Scalar::one() };
            pk = &pk + &e.scale(&c);
        }
        ps.push(pk);
    }
    Ok(ps.into_iter().skip(1).map(|p| InvariantPolynomial::from_poly(presentation, p)).collect())
}

/// exp(L) truncated at the given form degree, for L without constant term.
fn exp_truncated(l: &InvariantPolynomial, max_form_degree: u32) -> Result<InvariantPolynomial> {
    let mut out = InvariantPolynomial::constant(l.presentation(), Scalar::one());
    let mut term = out.clone();
    for r in 1u32.. {
        term = term.mul(l)?.truncated(max_form_degree).scale(&Scalar::new(1, r as i64));
        if term.is_zero() {
            break;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Σ_k coeffs[k]·P_k over the available degrees.
fn series_in_power_sums(presentation: &Presentation, coeffs: &[Scalar], max_form_degree: u32) -> Result<InvariantPolynomial> {
    let k_max = max_form_degree / power_sum_degree(presentation);
    let ps = power_sums(presentation, k_max)?;
    let mut out = InvariantPolynomial::zero(presentation);
    for k in 1..=k_max as usize {
        if k < coeffs.len() && !coeffs[k].is_zero() {
            out = out.add(&ps[k - 1].scale(&coeffs[k]))?;
        }
    }
    Ok(out)
}

/// Â genus of SO(n), through the given form degree.
pub fn a_hat(presentation: &Presentation, max_form_degree: u32) -> Result<InvariantPolynomial> {
    check_degree(max_form_degree)?;
    if !matches!(presentation, Presentation::SpecialOrthogonal(_)) {
        return Err(Error::Unsupported(format!("Â genus of {presentation}")));
    }
    let len = (max_form_degree / 4) as usize + 1;
    let l = series_in_power_sums(presentation, a_hat_log(len).coeffs(), max_form_degree)?;
    exp_truncated(&l, max_form_degree)
}

/// Chern character of a representation, through the given form degree.
pub fn chern_character(rep: &RepDescriptor, presentation: &Presentation, max_form_degree: u32) -> Result<InvariantPolynomial> {
    check_degree(max_form_degree)?;
    rep.validate()?;
    if presentation.is_tensor() {
        return Err(tensor_target());
    }
    let p = presentation;
    let step = power_sum_degree(p);
    let k_max = max_form_degree / step;
    let out = match rep {
        RepDescriptor::Trivial(r) => InvariantPolynomial::constant(p, Scalar::from(*r)),
        RepDescriptor::Vector => {
            let rank = InvariantPolynomial::constant(p, Scalar::from(rep.rank(p)?));
            let coeffs: Vec<Scalar> = (0..=k_max)
                .map(|k| match p {
                    Presentation::SpecialOrthogonal(_) => Scalar::from(2u32) / Scalar::factorial(2 * k),
                    _ => Scalar::factorial(k).recip(),
                })
                .collect();
            rank.add(&series_in_power_sums(p, &coeffs, max_form_degree)?)?
        }
        RepDescriptor::DiracSpinor => {
            if !matches!(p, Presentation::SpecialOrthogonal(_)) {
                return Err(Error::Unsupported(format!("spinors of {p}")));
            }
            let l = series_in_power_sums(p, cosh_half_log(k_max as usize + 1).coeffs(), max_form_degree)?;
            exp_truncated(&l, max_form_degree)?.scale(&Scalar::from(1u32 << p.roots()))
        }
        RepDescriptor::Charge(q) => {
            if *p != Presentation::Unitary(1) {
                return Err(Error::Unsupported(format!("charged line for {p}")));
            }
            let c1 = InvariantPolynomial::generator(p, GeneratorKind::Chern(1), 0)?;
            exp_truncated(&c1.scale(q), max_form_degree)?
        }
        RepDescriptor::PowerSums { rank, terms } => {
            let max_k = terms.iter().flat_map(|(_, ks)| ks.iter().copied()).max().unwrap_or(0);
            let ps = power_sums(p, max_k)?;
            let mut out = InvariantPolynomial::zero(p);
            if !terms.iter().any(|(_, ks)| ks.is_empty()) {
                out = InvariantPolynomial::constant(p, Scalar::from(*rank));
            }
            for (c, ks) in terms {
                let mut t = InvariantPolynomial::constant(p, c.clone());
                for k in ks {
                    t = t.mul(&ps[*k as usize - 1])?;
                }
                out = out.add(&t)?;
            }
            out
        }
        RepDescriptor::Sum(parts) => {
            let mut out = InvariantPolynomial::zero(p);
            for part in parts {
                out = out.add(&chern_character(part, p, max_form_degree)?)?;
            }
            out
        }
    };
    Ok(out.truncated(max_form_degree))
}

