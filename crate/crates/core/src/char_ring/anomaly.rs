use std::collections::BTreeMap;
use std::fmt;

use super::characters::{a_hat, chern_character, RepDescriptor};
use super::ring::{InvariantPolynomial, Presentation};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Cancels,
    Obstructed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Cancels => "CANCELS",
            Verdict::Obstructed => "OBSTRUCTED",
        })
    }
}

fn verdict_of(p: &InvariantPolynomial) -> Verdict {
    if p.is_zero() {
        Verdict::Cancels
    } else {
        Verdict::Obstructed
    }
}

/// Gravitational anomaly polynomial in dimension n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GravitationalAnomaly {
    pub n: u32,
    pub rep: RepDescriptor,
    pub polynomial: InvariantPolynomial,
    pub verdict: Verdict,
}

impl fmt::Display for GravitationalAnomaly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P = {} ; {}", self.polynomial, self.verdict)
    }
}

/// P(ρ) = [Â·ch(ρ)]_{n+2} on SO(n); defined for n ≡ 2 mod 4.
pub fn anomaly_p(n: u32, rep: &RepDescriptor) -> Result<GravitationalAnomaly> {
    if n % 4 != 2 {
        return Err(Error::Precondition(format!("the gravitational anomaly needs n = 2 mod 4, got n = {n}")));
    }
    let so = Presentation::so(n)?;
    let top = n + 2;
    let total = a_hat(&so, top)?.mul(&chern_character(rep, &so, top)?)?;
    let polynomial = total.component(top);
    let verdict = verdict_of(&polynomial);
    Ok(GravitationalAnomaly { n, rep: rep.clone(), polynomial, verdict })
}

/// Mixed gravitational/gauge anomaly with its bidegree decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedAnomaly {
    pub n: u32,
    pub polynomial: InvariantPolynomial,
    /// Every (gravitational, gauge) polynomial bidegree with r + s = n/2 + 1,
    /// including vanishing ones.
    pub components: BTreeMap<(u32, u32), InvariantPolynomial>,
    pub verdict: Verdict,
}

impl MixedAnomaly {
    pub fn nonzero_components(&self) -> impl Iterator<Item = (&(u32, u32), &InvariantPolynomial)> {
        self.components.iter().filter(|(_, p)| !p.is_zero())
    }
}

impl fmt::Display for MixedAnomaly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Q = {} ; {}", self.polynomial, self.verdict)?;
        for ((r, s), p) in &self.components {
            writeln!(f, "  ({r},{s}): {p}")?;
        }
        Ok(())
    }
}

/// Q(ρ, β) = [Â·ch(ρ) ⊗ ch(β)]_{n+2} on SO(n) ⊗ G for even n. The verdict is
/// `Cancels` only when every bidegree component vanishes.
pub fn anomaly_q(n: u32, rep: &RepDescriptor, gauge: &Presentation, beta: &RepDescriptor) -> Result<MixedAnomaly> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::Precondition(format!("the mixed anomaly needs even n, got n = {n}")));
    }
    if gauge.is_tensor() {
        return Err(Error::Precondition("the gauge factor must be a single group".into()));
    }
    let so = Presentation::so(n)?;
    let top = n + 2;
    let gravity = a_hat(&so, top)?.mul(&chern_character(rep, &so, top)?)?;
    let gauge_part = chern_character(beta, gauge, top)?;
    let polynomial = InvariantPolynomial::tensor(&gravity, &gauge_part)?.component(top);
    let split = polynomial.bidegree_components();
    let half = top / 2;
    let components = (0..=half)
        .map(|r| {
            let key = (r, half - r);
            let p = split.get(&key).cloned().unwrap_or_else(|| InvariantPolynomial::zero(polynomial.presentation()));
            (key, p)
        })
        .collect();
    let verdict = verdict_of(&polynomial);
    Ok(MixedAnomaly { n, polynomial, components, verdict })
}
