use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dimension `N` and the contraction coefficients `κ_1..κ_N` of `so_κ(N+1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CkSignature {
    n: usize,
    kappa: Vec<f64>,
}

impl CkSignature {
    pub fn new(kappa: Vec<f64>) -> Result<Self> {
        if kappa.is_empty() {
            return Err(Error::InvalidSignature(
                "need at least one coefficient".into(),
            ));
        }
        if let Some(k) = kappa.iter().find(|k| !k.is_finite()) {
            return Err(Error::InvalidSignature(format!(
                "non-finite coefficient {k}"
            )));
        }
        Ok(Self {
            n: kappa.len(),
            kappa,
        })
    }

    /// Builds a signature and checks that it has exactly `n` entries.
    pub fn with_dimension(n: usize, kappa: Vec<f64>) -> Result<Self> {
        if kappa.len() != n {
            return Err(Error::InvalidSignature(format!(
                "expected {n} coefficients, got {}",
                kappa.len()
            )));
        }
        Self::new(kappa)
    }

    /// `so(N+1)`: every κ equal to +1.
    pub fn compact(n: usize) -> Self {
        Self {
            n,
            kappa: vec![1.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    /// `κ_m`, 1-based as in `κ_1..κ_N`.
    pub fn kappa_m(&self, m: usize) -> Result<f64> {
        self.check_m(m)?;
        Ok(self.kappa[m - 1])
    }

    /// Copy with `κ_m` replaced.
    pub fn with_kappa_m(&self, m: usize, value: f64) -> Result<Self> {
        self.check_m(m)?;
        let mut kappa = self.kappa.clone();
        kappa[m - 1] = value;
        Ok(Self { n: self.n, kappa })
    }

    /// Each nonzero coefficient replaced by its sign (generator rescaling).
    pub fn normalized(&self) -> Self {
        let kappa = self
            .kappa
            .iter()
            .map(|&k| if k == 0.0 { 0.0 } else { k.signum() })
            .collect();
        Self { n: self.n, kappa }
    }

    pub fn num_generators(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// All generators in lexicographic order.
    pub fn generators(&self) -> Vec<GeneratorIndex> {
        GeneratorIndex::all(self.n)
    }

    pub(crate) fn check_m(&self, m: usize) -> Result<()> {
        if m == 0 || m > self.n {
            return Err(Error::IndexOutOfRange(format!(
                "m = {m} not in 1..={}",
                self.n
            )));
        }
        Ok(())
    }
}

/// Label `(a, b)` of the generator `J_ab`, with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorIndex {
    pub a: usize,
    pub b: usize,
}

impl GeneratorIndex {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if a < b && b <= n {
            Ok(Self { a, b })
        } else {
            Err(Error::IndexOutOfRange(format!("J_{a}{b} with N = {n}")))
        }
    }

    pub fn all(n: usize) -> Vec<Self> {
        (0..n)
            .flat_map(|a| (a + 1..=n).map(move |b| Self { a, b }))
            .collect()
    }

    /// Position in the lexicographic ordering of [`GeneratorIndex::all`].
    pub fn linear(self, n: usize) -> usize {
        // rows a' < a hold n − a' generators each
        self.a * n - self.a * self.a.saturating_sub(1) / 2 + (self.b - self.a - 1)
    }
}

impl std::fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "J_{}{}", self.a, self.b)
    }
}

/// `κ_ab = κ_{a+1} κ_{a+2} ⋯ κ_b`.
pub fn two_index_kappa(sig: &CkSignature, a: usize, b: usize) -> Result<f64> {
    if a >= b || b > sig.n {
        return Err(Error::IndexOutOfRange(format!(
            "κ_{a}{b} needs 0 ≤ a < b ≤ {}",
            sig.n
        )));
    }
    Ok(sig.kappa[a..b].iter().product())
}
