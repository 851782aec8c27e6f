use serde::Serialize;

use super::formulas::FormulaId;

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub formula: &'static str,
    pub parameters: &'static str,
    pub kind: &'static str,
    pub literal_reading: bool,
}

fn describe(id: FormulaId) -> (&'static str, &'static str) {
    use FormulaId::*;
    match id {
        BnInA2nMinus1 => ("U(B_n -> A_{2n-1}) = prod_{k=1}^{2n} [k]_{(-1)^k q}", "n >= 2"),
        BnInA2n => ("U(B_n -> A_{2n}) = prod_{k=1}^{2n+1} [k]_{(-1)^k q}", "n >= 2"),
        BnInDnPlus1 => ("U(B_n -> D_{n+1}) = [2][3]_{-q}[4] prod_{k=3}^n ([2k+1] - q^k)", "n >= 2"),
        DihedralEven => ("U(I2(n+1) -> A_n) = [2]_{q^m} [n+1]_{q^m}, n = 2m", "n >= 2 even"),
        DihedralOdd => ("U(I2(n+1) -> A_n) = [2]_{q^(m-1)} [2]_{q^m} [m]_{q^n}, n = 2m-1", "n >= 3 odd"),
        SignedPairing => ("B_m(-q) U(B_m -> A_n)(q) = A_n(-q) B_m(q), m = floor((n+1)/2)", "n >= 3"),
        AffAInAffA => ("U(affA_{n-1} -> affA_{mn-1}) = prod_{k=2}^n [k]_{q^m} / (1 - q^{(k-1)m})", "n >= 2, m >= 1"),
        AffBInAffDnPlus1 => (
            "[2][3]_{-q}[4] / ((1-q)(1-q^3)(1+q^n)) prod_{k=3}^n ([2k+1] - q^k) / (1 - q^{2k-1})",
            "n >= 3",
        ),
        AffBInAffD2n => ("prod_{k=1}^{2n} [k]_{(-1)^k q} prod_{k=1}^n N_k / (1 - q^{2(n+k)-3})", "n >= 3"),
        AffBInAffD2nPlus1 => ("prod_{k=1}^{2n+1} [k]_{(-1)^k q} prod_{k=1}^n N_k / (1 - q^{2(n+k)-1})", "n >= 3"),
        AffCInAffA2nPlus1 => (
            "[n+1]_{-q} [n+1]_{(-1)^{n+1} q} prod_{k<=2n+1, k!=n+1} [k]_{(-1)^k q} / (1 + (-q)^k)",
            "n >= 2",
        ),
        AffCInAffA2n => ("prod_{k=1}^{2n} [k+1]_{(-1)^{k+1} q} / (1 + (-q)^k)", "n >= 2"),
        AffCInAffA2nMinus1 => ("prod_{k=2}^{2n} [k]_{(-1)^k q} / (1 + (-q)^{k-1})", "n >= 2"),
        AffCInAffBnPlus1 => (
            "[2][3]_{-q}[4][2]_{-q^{n+1}} / ((1-q)(1-q^3)(1-q^5)) prod_{k=3}^n ([2k+1] - q^k) / (1 - q^{2k+1})",
            "n >= 2",
        ),
        AffCInAffDnPlus2 => ("D(n) prod_{k=1}^n (1 + q^{k+1}) / (1 - q^{n+k+2})", "n >= 2"),
        AffCInAffC2nPlus1 => ("prod_{k=1}^{2n+1} [k]_{(-1)^k q} prod_{k=1}^n (1 + q^{2k}) / (1 - q^{2(n+k)+1})", "n >= 2"),
        AffCInAffC2n => ("prod_{k=1}^{2n} [k]_{(-1)^k q} prod_{k=1}^n (1 + q^{2k}) / (1 - q^{2(n+k)-1})", "n >= 2"),
        BottAffA => ("Poincare series of affA_{n-1}: prod_{k=2}^n [k] / (1 - q^{k-1})", "n >= 2"),
        ReinerAffB => ("(-aq;q)_n (-q;q)_{n-1} [n]! / (aq^n;q)_n at a = 1", "n >= 3"),
        ReinerAffC => ("(-aq;q)_n (-bq;q)_n [n]! / (abq^{n+1};q)_n at a = b = 1", "n >= 2"),
        PoincareA => ("prod_{k=1}^{n+1} [k]", "n >= 1"),
        PoincareB => ("prod_{k=1}^n [2k]", "n >= 2"),
        CosetFactor => (
            "m=1: [2n-1]_{-q}[2n]; m=2: [2n][2n+1]_{-q}; m=3: [2n+1] - q^n",
            "n >= 2, m in {1, 2, 3}",
        ),
    }
}

/// Every formula the library can evaluate. `N_1 = 1`, `N_k = 1 + q^{2(k-1)}`,
/// and `D(n)` is the `B_n -> D_{n+1}` polynomial.
pub fn catalog() -> Vec<CatalogEntry> {
    FormulaId::ALL
        .into_iter()
        .map(|id| {
            let (formula, parameters) = describe(id);
            CatalogEntry {
                id: id.tag(),
                formula,
                parameters,
                kind: if id.is_series() { "series" } else { "polynomial" },
                literal_reading: id.has_literal_reading(),
            }
        })
        .collect()
}
