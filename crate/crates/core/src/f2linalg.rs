//! Dense linear algebra over GF(2).
//!
//! Vectors are packed into `u64` words; bits past `len` are always zero so
//! that derived equality and hashing agree with the mathematical value.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from the low `len` bits of `mask` (bit `i` is entry `i`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "from_mask supports at most 64 entries");
        let mut v = Self::zeros(len);
        if len > 0 {
            let keep = if len == WORD {
                u64::MAX
            } else {
                (1u64 << len) - 1
            };
            v.words[0] = mask & keep;
        }
        v
    }

    /// Parses a string of `0`/`1` characters. Whitespace is ignored.
    pub fn parse_bits(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for (col, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::parse(
                        1,
                        col + 1,
                        format!("expected 0 or 1, found {c:?}"),
                    ))
                }
            }
        }
        Ok(Self::from_bools(&bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place addition over GF(2).
    pub fn xor_assign(&mut self, other: &BinaryVector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BinaryVector) -> BinaryVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BinaryVector) -> BinaryVector {
        assert_eq!(self.len, other.len, "vector length mismatch");
        BinaryVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn or(&self, other: &BinaryVector) -> BinaryVector {
        assert_eq!(self.len, other.len, "vector length mismatch");
        BinaryVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BinaryVector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Index of the lowest set entry.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Low 64 entries packed as a mask (bit `i` is entry `i`).
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= WORD, "to_mask supports at most 64 entries");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn concat(&self, other: &BinaryVector) -> BinaryVector {
        let mut out = BinaryVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({})", self.to_bit_string())
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BinaryVector>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BinaryVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BinaryVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from row vectors. An empty row list needs `cols` to
    /// know its width.
    pub fn from_rows(cols: usize, rows: Vec<BinaryVector>) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has length {}, expected {cols}",
                r.len()
            )));
        }
        Ok(Self { cols, rows })
    }

    /// Convenience constructor from strings such as `["0110", "0011"]`.
    pub fn from_bit_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| BinaryVector::parse_bits(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BinaryVector::len);
        Self::from_rows(cols, parsed)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BinaryVector {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BinaryVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BinaryVector> {
        self.rows
    }

    pub fn column(&self, c: usize) -> BinaryVector {
        let mut v = BinaryVector::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BinaryVector::is_zero)
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// Entrywise sum over GF(2).
    pub fn add(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.num_rows() != other.num_rows() || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.num_rows(),
                self.cols,
                other.num_rows(),
                other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.xor(b))
            .collect();
        Ok(BinaryMatrix {
            cols: self.cols,
            rows,
        })
    }

    /// Matrix product over GF(2).
    pub fn mat_mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.num_rows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.num_rows(),
                self.cols,
                other.num_rows(),
                other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BinaryVector::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BinaryMatrix {
            cols: other.cols,
            rows,
        })
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BinaryVector) -> Result<BinaryVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = BinaryVector::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form. Zero rows are dropped; the returned pivot
    /// columns are strictly increasing and `rows[i]` has its leading one at
    /// `pivots[i]`.
    pub fn rref(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        (
            BinaryMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self · v = 0}` as the rows of a matrix in reduced echelon
    /// form, leading ones in increasing column order.
    pub fn nullspace(&self) -> BinaryMatrix {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<BinaryVector> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BinaryVector::unit(self.cols, f);
                for (row, &p) in reduced.rows.iter().zip(&pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BinaryMatrix {
            cols: self.cols,
            rows: basis,
        }
        .rref()
        .0
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BinaryVector) -> bool {
        let (reduced, pivots) = self.rref();
        reduce_against(&reduced, &pivots, v).is_zero()
    }

    /// Whether both matrices have the same row space.
    pub fn same_row_space(&self, other: &BinaryMatrix) -> bool {
        self.cols == other.cols && self.rref().0 == other.rref().0
    }

    /// Solves `self · x = rhs`, returning one solution if any exists.
    pub fn solve(&self, rhs: &BinaryVector) -> Result<Option<BinaryVector>> {
        if rhs.len() != self.num_rows() {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                rhs.len(),
                self.num_rows()
            )));
        }
        // Row-reduce the augmented matrix [A | b].
        let augmented_rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| row.concat(&BinaryVector::from_bools(&[rhs.get(r)])))
            .collect();
        let augmented = BinaryMatrix {
            cols: self.cols + 1,
            rows: augmented_rows,
        };
        let (reduced, pivots) = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BinaryVector::zeros(self.cols);
        for (row, &p) in reduced.rows.iter().zip(&pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Parses the plain-text format: a `rows cols` header line followed by one
    /// line of `0`/`1` characters per row. Whitespace inside rows is ignored,
    /// as are blank lines and lines starting with `#`.
    pub fn parse_text(input: &str) -> Result<BinaryMatrix> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing `rows cols` header"))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::parse(hline, 1, "header must be `rows cols`"));
        }
        let parse_dim = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(hline, 1, format!("invalid dimension {s:?}")))
        };
        let (nrows, ncols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        let mut rows = Vec::with_capacity(nrows);
        for (lineno, line) in lines {
            if rows.len() == nrows {
                return Err(Error::parse(lineno, 1, format!("more than {nrows} rows")));
            }
            let mut bits = Vec::with_capacity(ncols);
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    c if c.is_whitespace() => {}
                    c => {
                        return Err(Error::parse(
                            lineno,
                            col + 1,
                            format!("expected 0 or 1, found {c:?}"),
                        ))
                    }
                }
            }
            if bits.len() != ncols {
                return Err(Error::parse(
                    lineno,
                    1,
                    format!("row has {} entries, expected {ncols}", bits.len()),
                ));
            }
            rows.push(BinaryVector::from_bools(&bits));
        }
        if rows.len() != nrows {
            return Err(Error::parse(
                input.lines().count().max(1),
                1,
                format!("expected {nrows} rows, found {}", rows.len()),
            ));
        }
        BinaryMatrix::from_rows(ncols, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.num_rows(), self.cols);
        for row in &self.rows {
            out.push_str(&row.to_bit_string());
            out.push('\n');
        }
        out
    }
}

/// Reduces `v` by a matrix already in reduced echelon form.
pub(crate) fn reduce_against(
    reduced: &BinaryMatrix,
    pivots: &[usize],
    v: &BinaryVector,
) -> BinaryVector {
    let mut v = v.clone();
    for (row, &p) in reduced.rows.iter().zip(pivots) {
        if v.get(p) {
            v.xor_assign(row);
        }
    }
    v
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix {}x{} [", self.num_rows(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&r.to_bit_string())?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}
