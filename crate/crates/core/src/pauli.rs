//! n-qubit Pauli operators in binary symplectic form.
//!
//! An operator is stored as `i^phase · ∏_j X_j^{x_j} Z_j^{z_j}`, with the X
//! factor to the left of the Z factor on each qubit. Under this ordering a
//! product only picks up `(-1)^{z_a · x_b}` from moving the Zs of the left
//! operand past the Xs of the right one.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::f2linalg::{BinaryMatrix, BinaryVector};

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BinaryVector,
    z: BinaryVector,
    phase: u8,
}

impl PauliOperator {
    pub fn new(x: BinaryVector, z: BinaryVector, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch(format!(
                "x has {} bits but z has {}",
                x.len(),
                z.len()
            )));
        }
        Ok(Self {
            x,
            z,
            phase: phase % 4,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            x: BinaryVector::zeros(n),
            z: BinaryVector::zeros(n),
            phase: 0,
        }
    }

    /// Hermitian single-qubit Pauli `p` on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut op = Self::identity(n);
        op.set_qubit(q, p);
        op
    }

    /// Z-only operator with support `support`.
    pub fn z_string(support: &BinaryVector) -> Self {
        Self {
            x: BinaryVector::zeros(support.len()),
            z: support.clone(),
            phase: 0,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BinaryVector {
        &self.x
    }

    pub fn z_bits(&self) -> &BinaryVector {
        &self.z
    }

    /// Exponent of `i` in the X-before-Z representation.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    /// Replaces the factor on qubit `q` by the Hermitian letter `p`, keeping the
    /// printed sign of the operator unchanged.
    pub fn set_qubit(&mut self, q: usize, p: Pauli) {
        let was_y = self.get(q) == Pauli::Y;
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
        let is_y = p == Pauli::Y;
        // Y = i·XZ, so each Y carries one unit of phase.
        self.phase = (self.phase + 4 + is_y as u8 - was_y as u8) % 4;
    }

    fn y_count(&self) -> usize {
        self.x.and(&self.z).count_ones()
    }

    /// Phase exponent relative to the product of Hermitian letters, i.e. the
    /// printed sign: 0 → `+`, 1 → `i`, 2 → `-`, 3 → `-i`.
    pub fn sign_exponent(&self) -> u8 {
        ((self.phase as usize + 4 - self.y_count() % 4) % 4) as u8
    }

    pub fn is_hermitian(&self) -> bool {
        self.sign_exponent() % 2 == 0
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Multiplies by `i^k`.
    pub fn times_i(&self, k: u8) -> Self {
        Self {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: (self.phase + k) % 4,
        }
    }

    pub fn negate(&self) -> Self {
        self.times_i(2)
    }

    /// Same letters, sign dropped.
    pub fn unsigned(&self) -> Self {
        self.times_i(4 - self.sign_exponent())
    }

    fn check_size(&self, other: &PauliOperator) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::DimensionMismatch(format!(
                "Pauli operators on {} and {} qubits",
                self.num_qubits(),
                other.num_qubits()
            )));
        }
        Ok(())
    }

    /// The product `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_size(other)?;
        let swap = if self.z.dot(&other.x) { 2 } else { 0 };
        Ok(PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: (self.phase + other.phase + swap) % 4,
        })
    }

    /// Symplectic inner product test.
    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.x.dot(&other.z) == self.z.dot(&other.x))
    }

    /// Number of qubits carrying a non-identity factor.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    /// `(x | z)` as a single vector of length `2n`.
    pub fn symplectic(&self) -> BinaryVector {
        self.x.concat(&self.z)
    }

    /// Inverse of [`symplectic`](Self::symplectic) for a Hermitian operator with
    /// `+` sign.
    pub fn from_symplectic(v: &BinaryVector) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(Error::DimensionMismatch(format!(
                "symplectic vector of odd length {}",
                v.len()
            )));
        }
        let n = v.len() / 2;
        let mut x = BinaryVector::zeros(n);
        let mut z = BinaryVector::zeros(n);
        for i in v.iter_ones() {
            if i < n {
                x.set(i, true);
            } else {
                z.set(i - n, true);
            }
        }
        let y = x.and(&z).count_ones();
        Ok(Self {
            x,
            z,
            phase: (y % 4) as u8,
        })
    }

    /// Places this operator on qubits `offset..offset+n` of a `total`-qubit
    /// register.
    pub fn embed(&self, total: usize, offset: usize) -> Result<Self> {
        let n = self.num_qubits();
        if offset + n > total {
            return Err(Error::DimensionMismatch(format!(
                "cannot place {n} qubits at offset {offset} in a register of {total}"
            )));
        }
        let mut x = BinaryVector::zeros(total);
        let mut z = BinaryVector::zeros(total);
        for i in self.x.iter_ones() {
            x.set(offset + i, true);
        }
        for i in self.z.iter_ones() {
            z.set(offset + i, true);
        }
        Ok(Self {
            x,
            z,
            phase: self.phase,
        })
    }
}

/// Whether the `(x | z)` rows of `ops` are linearly independent over GF(2).
/// Phases are ignored.
pub fn independent_set(ops: &[PauliOperator]) -> bool {
    let Some(first) = ops.first() else {
        return true;
    };
    let n = first.num_qubits();
    if ops.iter().any(|p| p.num_qubits() != n) {
        return false;
    }
    symplectic_matrix(ops).rank() == ops.len()
}

/// Stacks the symplectic vectors of `ops` as rows. All operators must share
/// a qubit count.
pub fn symplectic_matrix(ops: &[PauliOperator]) -> BinaryMatrix {
    let width = ops.first().map_or(0, |p| 2 * p.num_qubits());
    BinaryMatrix::from_rows(width, ops.iter().map(PauliOperator::symplectic).collect())
        .expect("operators must share a qubit count")
}

/// Product of `ops[i]` over the set bits of `mask`, left to right.
pub fn product_of(n: usize, ops: &[PauliOperator], mask: &BinaryVector) -> Result<PauliOperator> {
    mask.iter_ones()
        .try_fold(PauliOperator::identity(n), |acc, i| acc.multiply(&ops[i]))
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, body, offset) = if let Some(rest) = s.strip_prefix("-i") {
            (3u8, rest, 2)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest, 2)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest, 1)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest, 1)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest, 1)
        } else {
            (0, s, 0)
        };
        let mut op = PauliOperator::identity(body.chars().count());
        for (q, ch) in body.chars().enumerate() {
            let p = match ch {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                c => {
                    return Err(Error::parse(
                        1,
                        offset + q + 1,
                        format!("invalid Pauli character {c:?}"),
                    ))
                }
            };
            op.set_qubit(q, p);
        }
        Ok(op.times_i(sign))
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign_exponent() {
            0 => {}
            1 => f.write_str("i")?,
            2 => f.write_str("-")?,
            _ => f.write_str("-i")?,
        }
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.get(q).letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    type Dense = Vec<Vec<Complex64>>;

    fn letter_matrix(l: Pauli) -> Dense {
        let (o, z, i) = (
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
        );
        match l {
            Pauli::I => vec![vec![o, z], vec![z, o]],
            Pauli::X => vec![vec![z, o], vec![o, z]],
            Pauli::Y => vec![vec![z, -i], vec![i, z]],
            Pauli::Z => vec![vec![o, z], vec![z, -o]],
        }
    }

    fn kron(a: &Dense, b: &Dense) -> Dense {
        let (ra, rb) = (a.len(), b.len());
        let mut out = vec![vec![Complex64::new(0.0, 0.0); ra * rb]; ra * rb];
        for i in 0..ra {
            for j in 0..ra {
                for k in 0..rb {
                    for l in 0..rb {
                        out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        out
    }

    fn matmul(a: &Dense, b: &Dense) -> Dense {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    /// Dense matrix built from the printed letters and sign only.
    fn dense(op: &PauliOperator) -> Dense {
        let mut m = vec![vec![Complex64::new(1.0, 0.0)]];
        for q in 0..op.num_qubits() {
            m = kron(&m, &letter_matrix(op.get(q)));
        }
        let s = Complex64::new(0.0, 1.0).powi(op.sign_exponent() as i32);
        m.iter()
            .map(|r| r.iter().map(|v| v * s).collect())
            .collect()
    }

    fn close(a: &Dense, b: &Dense) -> bool {
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .all(|(x, y)| (x - y).norm() < 1e-12)
    }

    #[test]
    fn parse_examples() {
        let a = p("XZIIZ");
        assert_eq!(a.x_bits().to_bit_string(), "10000");
        assert_eq!(a.z_bits().to_bit_string(), "01001");
        assert_eq!(a.phase(), 0);
        let b = p("-ZZ");
        assert_eq!(
            (
                b.x_bits().to_bit_string().as_str(),
                b.z_bits().to_bit_string().as_str(),
                b.phase()
            ),
            ("00", "11", 2)
        );
        let y = p("Y");
        assert_eq!(
            (y.x_bits().get(0), y.z_bits().get(0), y.phase()),
            (true, true, 1)
        );
        assert_eq!(y.to_string(), "Y");
        assert_eq!(p("-iXY").to_string(), "-iXY");
        assert_eq!(p("+iZ").to_string(), "iZ");
        assert!(matches!(
            "XQ".parse::<PauliOperator>(),
            Err(Error::Parse { column: 2, .. })
        ));
        assert!("-xZ".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn product_examples() {
        // X·Z = -iY and Z·X = iY, from 2×2 matrices.
        assert_eq!(p("X").multiply(&p("Z")).unwrap().to_string(), "-iY");
        assert_eq!(p("Z").multiply(&p("X")).unwrap().to_string(), "iY");
        assert_eq!(
            p("XZIIZ").multiply(&p("ZXZII")).unwrap().to_string(),
            "YYZIZ"
        );
        assert!(p("X").multiply(&p("XX")).is_err());
    }

    #[test]
    fn commutation_and_weight_examples() {
        assert!(p("X").commutes(&p("X")).unwrap());
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(!p("ZZZZZ").commutes(&p("XZIIZ")).unwrap());
        assert!(p("X").commutes(&p("ZZ")).is_err());
        assert_eq!(p("IIIII").weight(), 0);
        assert_eq!(p("ZZZZZ").weight(), 5);
        assert_eq!(p("YZIZY").weight(), 4);
    }

    #[test]
    fn independence_examples() {
        assert!(independent_set(&[p("X"), p("Z")]));
        assert!(!independent_set(&[p("XX"), p("ZZ"), p("YY")]));
        assert!(independent_set(&[
            p("YYZIZ"),
            p("XIXZZ"),
            p("XZZXI"),
            p("YZIZY")
        ]));
        assert!(independent_set(&[]));
    }

    #[test]
    fn symplectic_round_trip_keeps_letters() {
        let a = p("XYZI");
        assert_eq!(PauliOperator::from_symplectic(&a.symplectic()).unwrap(), a);
    }

    #[test]
    fn embed_pads_with_identity() {
        assert_eq!(p("-XY").embed(4, 1).unwrap().to_string(), "-IXYI");
        assert!(p("XY").embed(2, 1).is_err());
    }

    #[test]
    fn serde_uses_strings() {
        let ops = vec![p("XZ"), p("-YY")];
        let json = serde_json::to_string(&ops).unwrap();
        assert_eq!(json, r#"["XZ","-YY"]"#);
        let back: Vec<PauliOperator> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ops);
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
        (proptest::collection::vec(0u8..4, n), 0u8..4).prop_map(move |(letters, phase)| {
            let mut op = PauliOperator::identity(n);
            for (q, l) in letters.into_iter().enumerate() {
                op.set_qubit(q, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][l as usize]);
            }
            op.times_i(phase)
        })
    }

    proptest! {
        #[test]
        fn multiply_is_associative(a in arb_pauli(4), b in arb_pauli(4), c in arb_pauli(4)) {
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn commutation_is_symmetric(a in arb_pauli(5), b in arb_pauli(5)) {
            prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
        }

        #[test]
        fn anticommuting_pair_product_commutes(a in arb_pauli(4), b in arb_pauli(4), c in arb_pauli(4)) {
            if !a.commutes(&b).unwrap() && !a.commutes(&c).unwrap() {
                prop_assert!(a.commutes(&b.multiply(&c).unwrap()).unwrap());
            }
        }

        #[test]
        fn hermitian_squares_to_identity(a in arb_pauli(6)) {
            let h = if a.is_hermitian() { a } else { a.times_i(1) };
            let sq = h.multiply(&h).unwrap();
            prop_assert!(sq.is_identity());
            prop_assert_eq!(sq.phase(), 0);
        }

        #[test]
        fn printing_round_trips(a in arb_pauli(5)) {
            prop_assert_eq!(a.to_string().parse::<PauliOperator>().unwrap(), a);
        }

        #[test]
        fn agrees_with_dense_matrices(
            (a, b) in (1usize..=3).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n)))
        ) {
            let ab = matmul(&dense(&a), &dense(&b));
            let ba = matmul(&dense(&b), &dense(&a));
            prop_assert!(close(&ab, &dense(&a.multiply(&b).unwrap())));
            prop_assert_eq!(a.commutes(&b).unwrap(), close(&ab, &ba));
        }
    }
}
