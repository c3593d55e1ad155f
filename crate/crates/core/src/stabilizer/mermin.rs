//! The Mermin–Peres square as a symbolic Pauli-group computation.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `i^phase · P_1 ⊗ … ⊗ P_n` with letters `0 = I, 1 = X, 2 = Y, 3 = Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pauli {
    pub phase: u8,
    pub letters: Vec<u8>,
}

impl Pauli {
    pub fn parse(word: &str) -> Result<Self> {
        let letters = word
            .chars()
            .map(|c| match c {
                'I' => Ok(0),
                'X' => Ok(1),
                'Y' => Ok(2),
                'Z' => Ok(3),
                _ => Err(Error::domain(format!("bad Pauli letter {c:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(Pauli { phase: 0, letters })
    }

    pub fn identity(n: usize) -> Self {
        Pauli {
            phase: 0,
            letters: vec![0; n],
        }
    }

    pub fn mul(&self, other: &Pauli) -> Pauli {
        let mut phase = self.phase + other.phase;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (ph, c) = single_product(a, b);
                phase += ph;
                c
            })
            .collect();
        Pauli {
            phase: phase % 4,
            letters,
        }
    }

    pub fn commutes_with(&self, other: &Pauli) -> bool {
        let anti = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(&a, &b)| a != 0 && b != 0 && a != b)
            .count();
        anti % 2 == 0
    }

    pub fn tensor_identity(&self, extra: usize) -> Pauli {
        let mut letters = self.letters.clone();
        letters.extend(std::iter::repeat_n(0, extra));
        Pauli {
            phase: self.phase,
            letters,
        }
    }

    /// `Some(±1)` if this is `±I`.
    pub fn identity_sign(&self) -> Option<i8> {
        if self.letters.iter().any(|&l| l != 0) {
            return None;
        }
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

/// `a · b = i^k c` for single-qubit Paulis.
fn single_product(a: u8, b: u8) -> (u8, u8) {
    if a == 0 {
        return (0, b);
    }
    if b == 0 {
        return (0, a);
    }
    if a == b {
        return (0, 0);
    }
    // XY = iZ, YZ = iX, ZX = iY; reversed order gives −i.
    let c = 6 - a - b;
    let cyclic = (a % 3) + 1 == b;
    (if cyclic { 1 } else { 3 }, c)
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = ["", "i", "-", "-i"][self.phase as usize];
        let word: String = self.letters.iter().map(|&l| ['I', 'X', 'Y', 'Z'][l as usize]).collect();
        write!(f, "{sign}{word}")
    }
}

/// Outcome of the Mermin–Peres argument for `n` qubits.
#[derive(Clone, Debug, Serialize)]
pub struct MerminProof {
    pub qubits: usize,
    pub table: Vec<Vec<String>>,
    /// Every row and column consists of pairwise commuting operators.
    pub lines_commute: bool,
    /// Signs of the products of columns 1–3 then rows 1–3.
    pub product_signs: Vec<i8>,
    pub valuations_checked: u64,
    pub consistent_valuation: Option<Vec<i8>>,
}

impl MerminProof {
    /// Commuting lines, products `(+,+,+,+,+,−)` and no consistent valuation.
    pub fn holds(&self) -> bool {
        self.lines_commute
            && self.product_signs == [1, 1, 1, 1, 1, -1]
            && self.valuations_checked == 512
            && self.consistent_valuation.is_none()
    }
}

const SQUARE: [[&str; 3]; 3] = [["ZI", "IX", "ZX"], ["IZ", "XI", "XZ"], ["ZZ", "XX", "YY"]];

/// Index triples of the columns then the rows of a 3×3 table read row-major.
pub const SQUARE_LINES: [[usize; 3]; 6] = [
    [0, 3, 6],
    [1, 4, 7],
    [2, 5, 8],
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
];

pub fn mermin_square_check(n: usize) -> Result<MerminProof> {
    if n < 2 {
        return Err(Error::domain(format!("the Mermin square needs n >= 2 qubits, got {n}")));
    }
    let cells: Vec<Pauli> = SQUARE
        .iter()
        .flatten()
        .map(|w| Pauli::parse(w).map(|p| p.tensor_identity(n - 2)))
        .collect::<Result<_>>()?;
    let mut lines_commute = true;
    let mut signs = Vec::with_capacity(6);
    for line in SQUARE_LINES {
        for (i, &a) in line.iter().enumerate() {
            for &b in &line[i + 1..] {
                lines_commute &= cells[a].commutes_with(&cells[b]);
            }
        }
        let prod = line
            .iter()
            .fold(Pauli::identity(n), |acc, &c| acc.mul(&cells[c]));
        signs.push(prod.identity_sign().ok_or_else(|| {
            Error::domain(format!("line product {prod} is not ±I"))
        })?);
    }
    let constraints: Vec<(Vec<usize>, i8)> = SQUARE_LINES
        .iter()
        .zip(&signs)
        .map(|(l, &s)| (l.to_vec(), s))
        .collect();
    let (checked, found) = search_valuation(9, &constraints);
    Ok(MerminProof {
        qubits: n,
        table: cells
            .chunks(3)
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect(),
        lines_commute,
        product_signs: signs,
        valuations_checked: checked,
        consistent_valuation: found,
    })
}

/// Exhaustive search over all `±1` valuations of `cells` items for one whose
/// product along each constraint's cells equals the constraint's sign.
/// Returns the number of candidates examined and the first consistent one.
pub fn search_valuation(cells: usize, constraints: &[(Vec<usize>, i8)]) -> (u64, Option<Vec<i8>>) {
    let total = 1u64 << cells;
    let mut found = None;
    for bits in 0..total {
        let v: Vec<i8> = (0..cells).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
        let ok = constraints
            .iter()
            .all(|(line, s)| line.iter().map(|&c| v[c]).product::<i8>() == *s);
        if ok && found.is_none() {
            found = Some(v);
        }
    }
    (total, found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_products() {
        let p = |w| Pauli::parse(w).unwrap();
        assert_eq!(p("X").mul(&p("Y")).to_string(), "iZ");
        assert_eq!(p("Y").mul(&p("X")).to_string(), "-iZ");
        assert_eq!(p("Z").mul(&p("X")).to_string(), "iY");
        assert_eq!(p("Y").mul(&p("Z")).to_string(), "iX");
        assert_eq!(p("XX").mul(&p("ZZ")).to_string(), "-YY");
        assert!(p("XX").commutes_with(&p("ZZ")));
        assert!(!p("XI").commutes_with(&p("ZI")));
    }

    #[test]
    fn square_for_two_and_three_qubits() {
        for n in [2, 3] {
            let proof = mermin_square_check(n).unwrap();
            assert!(proof.holds(), "{proof:?}");
        }
        assert_eq!(mermin_square_check(3).unwrap().table[2][2], "YYI");
        assert!(mermin_square_check(1).is_err());
    }

    #[test]
    fn control_all_plus_is_satisfiable() {
        let constraints: Vec<(Vec<usize>, i8)> = SQUARE_LINES.iter().map(|l| (l.to_vec(), 1)).collect();
        let (checked, found) = search_valuation(9, &constraints);
        assert_eq!(checked, 512);
        assert_eq!(found, Some(vec![1; 9]));
    }
}
