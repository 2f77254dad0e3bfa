//! Existence of standard and irreducible SO(3) structures on products `S × S¹`
//! of a closed oriented 4-manifold with a circle.
//!
//! A surface is reduced to its Euler characteristic χ and signature σ:
//!
//! * the standard structure exists iff `⟨w₄(TS), S⟩ ≡ χ(S) (mod 2)` vanishes;
//! * the irreducible structure additionally needs `⟨p₁(TS), S⟩ = 3σ(S)`
//!   divisible by 5.
//!
//! Only the free part of the pairing is seen; torsion in `H⁴(M; ℤ)` is out of
//! reach of `(χ, σ)`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default catalog shipped with the crate.
pub const DEFAULT_CATALOG: &str = include_str!("../data/catalog.jsonl");

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub name: String,
    pub euler: i64,
    pub signature: i64,
}

impl SurfaceInvariants {
    pub fn new(name: impl Into<String>, euler: i64, signature: i64) -> Self {
        SurfaceInvariants { name: name.into(), euler, signature }
    }

    /// Same manifold with the opposite orientation: σ changes sign.
    pub fn reversed(&self) -> Self {
        let name = match self.name.strip_prefix('-') {
            Some(n) => n.to_string(),
            None => format!("-{}", self.name),
        };
        SurfaceInvariants { name, euler: self.euler, signature: -self.signature }
    }
}

/// `χ(A#B) = χ(A) + χ(B) − 2`, `σ(A#B) = σ(A) + σ(B)`.
pub fn connected_sum(a: &SurfaceInvariants, b: &SurfaceInvariants) -> SurfaceInvariants {
    SurfaceInvariants {
        name: format!("{}#{}", a.name, b.name),
        euler: a.euler + b.euler - 2,
        signature: a.signature + b.signature,
    }
}

/// Input to the general criterion for a rank-5 bundle over a 5-manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleData {
    /// `TM = E³ ⊕ θ²`.
    pub splits_off_trivial_2plane: bool,
    /// `⟨p₁(TM), cycle⟩` on the generating 4-cycle.
    pub p1_pairing: i128,
}

impl BundleData {
    /// Bundle data of `S × S¹`.
    pub fn for_product(s: &SurfaceInvariants) -> Self {
        BundleData { splits_off_trivial_2plane: s.euler.rem_euclid(2) == 0, p1_pairing: 3 * s.signature as i128 }
    }
}

/// Irreducible structure exists iff the bundle splits off a trivial 2-plane
/// and `p₁` is divisible by 5.
pub fn theorem_criterion(b: &BundleData) -> bool {
    b.splits_off_trivial_2plane && b.p1_pairing.rem_euclid(5) == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub criterion: String,
    pub value: i128,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureVerdict {
    pub surface: SurfaceInvariants,
    pub standard_exists: bool,
    pub irreducible_exists: bool,
    pub reasons: Vec<Reason>,
}

pub fn standard_exists(s: &SurfaceInvariants) -> (bool, Vec<Reason>) {
    let w4 = s.euler.rem_euclid(2) as i128;
    let pass = w4 == 0;
    (pass, vec![Reason { criterion: "w4 pairing = chi mod 2".into(), value: w4, pass }])
}

pub fn irreducible_exists(s: &SurfaceInvariants) -> StructureVerdict {
    let (standard, mut reasons) = standard_exists(s);
    let p1 = 3 * s.signature as i128;
    let residue = p1.rem_euclid(5);
    // 3 is a unit mod 5
    assert_eq!(residue == 0, s.signature.rem_euclid(5) == 0, "3σ ≡ 0 and σ ≡ 0 (mod 5) must agree");
    reasons.push(Reason { criterion: "p1 pairing = 3 * sigma".into(), value: p1, pass: true });
    reasons.push(Reason { criterion: "p1 pairing mod 5".into(), value: residue, pass: residue == 0 });
    StructureVerdict {
        surface: s.clone(),
        standard_exists: standard,
        irreducible_exists: standard && residue == 0,
        reasons,
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("catalog line {line}: {source}")]
    Parse { line: usize, source: serde_json::Error },
    #[error("catalog line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("unknown surface '{name}'; available: {}", available.join(", "))]
    Lookup { name: String, available: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub euler: i64,
    pub signature: i64,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<i64>>,
}

impl CatalogEntry {
    pub fn invariants(&self) -> SurfaceInvariants {
        SurfaceInvariants::new(self.name.clone(), self.euler, self.signature)
    }
}

/// Surfaces read from a JSON-lines file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut entries: Vec<CatalogEntry> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let entry: CatalogEntry =
                serde_json::from_str(line).map_err(|source| CatalogError::Parse { line: line_no, source })?;
            if entry.provenance.trim().is_empty() {
                return Err(CatalogError::Invalid { line: line_no, message: "missing provenance".into() });
            }
            if entries.iter().any(|e| e.name == entry.name) {
                return Err(CatalogError::Invalid { line: line_no, message: format!("duplicate '{}'", entry.name) });
            }
            entries.push(entry);
        }
        Ok(Catalog { entries })
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn surfaces(&self) -> Vec<SurfaceInvariants> {
        self.entries.iter().map(CatalogEntry::invariants).collect()
    }

    pub fn lookup(&self, name: &str) -> Option<SurfaceInvariants> {
        self.entries.iter().find(|e| e.name == name).map(CatalogEntry::invariants)
    }

    /// Exact name, or a connected sum `A#B#…` of entries where `-X` is `X`
    /// with reversed orientation.
    pub fn resolve(&self, expr: &str) -> Result<SurfaceInvariants, CatalogError> {
        let expr = expr.trim();
        if let Some(s) = self.lookup(expr) {
            return Ok(s);
        }
        let lookup_error = || CatalogError::Lookup { name: expr.to_string(), available: self.names() };
        let mut summands = expr.split('#').map(|part| {
            let part = part.trim();
            self.lookup(part)
                .or_else(|| part.strip_prefix('-').and_then(|p| self.lookup(p)).map(|s| s.reversed()))
                .ok_or_else(lookup_error)
        });
        let first = summands.next().ok_or_else(lookup_error)??;
        let mut total = summands.try_fold(first, |acc, s| s.map(|s| connected_sum(&acc, &s)))?;
        total.name = expr.to_string();
        Ok(total)
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::parse(DEFAULT_CATALOG).expect("bundled catalog is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> Catalog {
        Catalog::default()
    }

    fn get(name: &str) -> SurfaceInvariants {
        cat().lookup(name).unwrap()
    }

    #[test]
    fn standard_structure() {
        assert!(standard_exists(&get("K3")).0);
        assert!(!standard_exists(&get("CP2")).0);
        assert!(standard_exists(&get("CP2#-CP2")).0);
        assert_eq!(standard_exists(&get("CP2")).1[0].value, 1);
    }

    #[test]
    fn irreducible_structure() {
        let k3 = irreducible_exists(&get("K3"));
        assert!(k3.standard_exists);
        assert!(!k3.irreducible_exists);
        assert_eq!(k3.reasons[1].value, -48);
        assert_eq!(k3.reasons[2].value, 2);

        let blowup = irreducible_exists(&get("CP2#-CP2"));
        assert!(blowup.standard_exists && blowup.irreducible_exists);

        let t4 = irreducible_exists(&get("T4"));
        assert!(t4.standard_exists && t4.irreducible_exists);
    }

    #[test]
    fn general_criterion() {
        assert!(!theorem_criterion(&BundleData { splits_off_trivial_2plane: true, p1_pairing: -48 }));
        assert!(theorem_criterion(&BundleData { splits_off_trivial_2plane: true, p1_pairing: 0 }));
        assert!(!theorem_criterion(&BundleData { splits_off_trivial_2plane: false, p1_pairing: 0 }));
        assert_eq!(BundleData::for_product(&get("K3")).p1_pairing, -48);
    }

    #[test]
    fn connected_sums() {
        let s = connected_sum(&get("CP2"), &get("-CP2"));
        assert_eq!((s.euler, s.signature), (4, 0));
        assert_eq!(s.name, "CP2#-CP2");
        let k3 = get("K3");
        let with_sphere = connected_sum(&k3, &get("S4"));
        assert_eq!((with_sphere.euler, with_sphere.signature), (24, -16));
        let kk = connected_sum(&k3, &k3);
        assert_eq!((kk.euler, kk.signature), (46, -32));
    }

    #[test]
    fn catalog_lookup_and_resolution() {
        assert_eq!(get("K3"), SurfaceInvariants::new("K3", 24, -16));
        assert_eq!(get("S2xS2"), SurfaceInvariants::new("S2xS2", 4, 0));
        assert_eq!(get("CP2"), SurfaceInvariants::new("CP2", 3, 1));
        let r = cat().resolve("CP2#-CP2#-CP2").unwrap();
        assert_eq!((r.euler, r.signature), (5, -1));
        assert_eq!(get("-CP2"), get("CP2").reversed());
        match cat().resolve("Enriques") {
            Err(CatalogError::Lookup { available, .. }) => assert!(available.contains(&"K3".to_string())),
            other => panic!("expected lookup error, got {other:?}"),
        }
        assert!(cat().resolve("K3#nope").is_err());
    }

    #[test]
    fn catalog_validation() {
        assert!(matches!(Catalog::parse("{not json}"), Err(CatalogError::Parse { line: 1, .. })));
        let no_prov = r#"{"name": "X", "euler": 2, "signature": 0, "provenance": ""}"#;
        assert!(matches!(Catalog::parse(no_prov), Err(CatalogError::Invalid { .. })));
        let missing = r#"{"name": "X", "euler": 2, "signature": 0}"#;
        assert!(Catalog::parse(missing).is_err());
        let dup = format!("{}\n{}", DEFAULT_CATALOG.lines().next().unwrap(), DEFAULT_CATALOG.lines().next().unwrap());
        assert!(matches!(Catalog::parse(&dup), Err(CatalogError::Invalid { line: 2, .. })));
    }

    #[test]
    fn catalog_agrees_with_betti_numbers() {
        for e in cat().entries() {
            let b = e.betti.as_ref().expect("bundled entries carry Betti numbers");
            let chi: i64 = b.iter().enumerate().map(|(i, bi)| if i % 2 == 0 { *bi } else { -bi }).sum();
            assert_eq!(chi, e.euler, "{}", e.name);
            assert!(e.signature.abs() <= b[2], "{}", e.name);
        }
    }
}
