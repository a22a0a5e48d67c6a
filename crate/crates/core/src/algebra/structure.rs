use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::signature::{two_index_kappa, CkSignature, GeneratorIndex};
use crate::{Error, Result};

/// One term `coef · J_target` of a bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    pub target: GeneratorIndex,
}

/// Sparse bracket table of a Lie algebra on the `J_ab` basis.
///
/// Only pairs `x < y` with a nonzero result are stored; `[y, x]` and `[x, x]`
/// are completed on access.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    sig: CkSignature,
    table: BTreeMap<(GeneratorIndex, GeneratorIndex), Vec<Term>>,
}

impl StructureConstants {
    pub fn signature(&self) -> &CkSignature {
        &self.sig
    }

    pub fn n(&self) -> usize {
        self.sig.n()
    }

    pub fn generators(&self) -> Vec<GeneratorIndex> {
        self.sig.generators()
    }

    /// Stored (x < y) entries with a nonzero result.
    pub fn entries(&self) -> impl Iterator<Item = (&(GeneratorIndex, GeneratorIndex), &Vec<Term>)> {
        self.table.iter()
    }

    /// `[x, y]` as a list of terms, antisymmetry applied.
    pub fn bracket(&self, x: GeneratorIndex, y: GeneratorIndex) -> Vec<Term> {
        use std::cmp::Ordering::*;
        match x.cmp(&y) {
            Equal => Vec::new(),
            Less => self.table.get(&(x, y)).cloned().unwrap_or_default(),
            Greater => self
                .table
                .get(&(y, x))
                .map(|ts| {
                    ts.iter()
                        .map(|t| Term {
                            coef: -t.coef,
                            target: t.target,
                        })
                        .collect()
                })
                .unwrap_or_default(),
        }
    }

    /// Overwrites the entry for `[x, y]`; zero coefficients are dropped.
    ///
    /// Intended for building custom or deliberately corrupted tables.
    pub fn set_bracket(
        &mut self,
        x: GeneratorIndex,
        y: GeneratorIndex,
        terms: Vec<Term>,
    ) -> Result<()> {
        let n = self.n();
        for g in [x, y].iter().chain(terms.iter().map(|t| &t.target)) {
            GeneratorIndex::new(g.a, g.b, n)?;
        }
        if x == y {
            return Err(Error::InvalidArgument(format!(
                "[{x}, {x}] is identically zero"
            )));
        }
        let (key, sign) = if x < y { ((x, y), 1.0) } else { ((y, x), -1.0) };
        let terms: Vec<Term> = terms
            .into_iter()
            .filter(|t| t.coef != 0.0)
            .map(|t| Term {
                coef: sign * t.coef,
                target: t.target,
            })
            .collect();
        if terms.is_empty() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, terms);
        }
        Ok(())
    }

    /// Dense structure tensor `c[x][y][t]` (lexicographic generator order).
    pub fn dense(&self) -> Vec<f64> {
        let n = self.n();
        let d = self.sig.num_generators();
        let mut c = vec![0.0; d * d * d];
        for (&(x, y), terms) in &self.table {
            let (ix, iy) = (x.linear(n), y.linear(n));
            for t in terms {
                let it = t.target.linear(n);
                c[(ix * d + iy) * d + it] += t.coef;
                c[(iy * d + ix) * d + it] -= t.coef;
            }
        }
        c
    }

    /// Largest entry-wise difference of the dense tensors.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.n(), other.n(), "tables of different dimension");
        self.dense()
            .iter()
            .zip(other.dense())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn from_table(
        sig: CkSignature,
        table: BTreeMap<(GeneratorIndex, GeneratorIndex), Vec<Term>>,
    ) -> Self {
        Self { sig, table }
    }

    /// JSON form `{"n", "kappa", "brackets": [{"x", "y", "terms": [{"coef", "target"}]}]}`.
    pub fn to_json(&self) -> Value {
        let brackets: Vec<Value> = self
            .table
            .iter()
            .map(|(&(x, y), terms)| {
                json!({
                    "x": [x.a, x.b],
                    "y": [y.a, y.b],
                    "terms": terms
                        .iter()
                        .map(|t| json!({"coef": t.coef, "target": [t.target.a, t.target.b]}))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "n": self.n(),
            "kappa": self.sig.kappa(),
            "brackets": brackets,
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            n: usize,
            kappa: Vec<f64>,
            brackets: Vec<Entry>,
        }
        #[derive(Deserialize)]
        struct Entry {
            x: [usize; 2],
            y: [usize; 2],
            terms: Vec<RawTerm>,
        }
        #[derive(Deserialize)]
        struct RawTerm {
            coef: f64,
            target: [usize; 2],
        }
        let doc: Doc = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidArgument(format!("bad structure-constant JSON: {e}")))?;
        let sig = CkSignature::with_dimension(doc.n, doc.kappa)?;
        let mut sc = Self {
            sig,
            table: BTreeMap::new(),
        };
        for e in doc.brackets {
            let x = GeneratorIndex::new(e.x[0], e.x[1], doc.n)?;
            let y = GeneratorIndex::new(e.y[0], e.y[1], doc.n)?;
            let terms = e
                .terms
                .iter()
                .map(|t| {
                    Ok(Term {
                        coef: t.coef,
                        target: GeneratorIndex::new(t.target[0], t.target[1], doc.n)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            sc.set_bracket(x, y, terms)?;
        }
        Ok(sc)
    }
}

/// Bracket table of `so_κ(N+1)`:
/// `[J_ab, J_ac] = κ_ab J_bc`, `[J_ab, J_bc] = −J_ac`, `[J_ac, J_bc] = κ_bc J_ab` for `a < b < c`.
pub fn build_structure_constants(sig: &CkSignature) -> StructureConstants {
    let n = sig.n();
    let mut table = BTreeMap::new();
    let mut put = |x: GeneratorIndex, y: GeneratorIndex, coef: f64, target: GeneratorIndex| {
        if coef != 0.0 {
            table.insert((x, y), vec![Term { coef, target }]);
        }
    };
    for a in 0..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                let (ab, ac, bc) = (
                    GeneratorIndex { a, b },
                    GeneratorIndex { a, b: c },
                    GeneratorIndex { a: b, b: c },
                );
                let k_ab = two_index_kappa(sig, a, b).expect("a < b ≤ n");
                let k_bc = two_index_kappa(sig, b, c).expect("b < c ≤ n");
                put(ab, ac, k_ab, bc);
                put(ab, bc, -1.0, ac);
                put(ac, bc, k_bc, ab);
            }
        }
    }
    StructureConstants::from_table(sig.clone(), table)
}

/// Max over generator triples of `|[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y]|_∞`.
pub fn jacobi_residual(sc: &StructureConstants) -> f64 {
    let d = sc.signature().num_generators();
    let c = sc.dense();
    let at = |x: usize, y: usize, t: usize| c[(x * d + y) * d + t];
    // [[X,Y],Z] component along s: Σ_t c[x][y][t] c[t][z][s]
    let double = |x: usize, y: usize, z: usize, s: usize| -> f64 {
        (0..d).map(|t| at(x, y, t) * at(t, z, s)).sum()
    };
    let mut worst = 0.0f64;
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                for s in 0..d {
                    let r = double(x, y, z, s) + double(y, z, x, s) + double(z, x, y, s);
                    worst = worst.max(r.abs());
                }
            }
        }
    }
    worst
}
