//! Linear algebra over `PG(n, q)` for prime `q`.
//!
//! Points are normalized so the first nonzero coordinate is 1 and are
//! ordered lexicographically on those coordinate tuples; a configuration is
//! a `u64` bit mask over that ordering (bit `i` = point `i`). Quadratic forms
//! use the monomial order `x_i x_j` for `j = 0..=n`, `i = 0..=j`, which for
//! `n = 3` is `x0², x0x1, x1², x0x2, x1x2, x2², x0x3, x1x3, x2x3, x3²`.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Largest supported number of quadratic monomials (`n = 5`).
pub const MAX_K: usize = 21;
/// Configurations are `u64` masks.
pub const MAX_POINTS: usize = 64;

pub type Row = [u8; MAX_K];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("q = {0} is not prime (prime powers are not supported)")]
    NotPrime(u32),
    #[error("dimension n = {0} is out of range (need 1 <= n <= 5)")]
    BadDimension(usize),
    #[error("PG({n},{q}) has {points} points, more than the {MAX_POINTS}-point mask budget")]
    TooManyPoints { n: usize, q: u32, points: u64 },
    #[error("form classification needs odd q, got q = {0}")]
    EvenCharacteristic(u32),
    #[error("form classification is defined for PG(3,q), got n = {0}")]
    UnsupportedDimension(usize),
    #[error("the zero form has no orbit")]
    ZeroForm,
    #[error("unrecognized form signature (gram rank {gram_rank}, {zeros} zeros)")]
    UnknownSignature { gram_rank: usize, zeros: u32 },
    #[error("expected a {expected}-dimensional form space, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("bad serialized value: {0}")]
    Parse(String),
}

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Prime field arithmetic on residues `0..q`.
#[derive(Debug, Clone)]
pub struct Field {
    q: u8,
    inv: Vec<u8>,
}

impl Field {
    pub fn new(q: u32) -> Result<Self, GeometryError> {
        if !is_prime(q) || q > 251 {
            return Err(GeometryError::NotPrime(q));
        }
        let q8 = q as u8;
        let mut inv = vec![0u8; q as usize];
        for a in 1..q {
            inv[a as usize] = (1..q).find(|b| a * b % q == 1).unwrap() as u8;
        }
        Ok(Self { q: q8, inv })
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.q
    }
    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.q as u16) as u8
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.q as u16 - b as u16) % self.q as u16) as u8
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q as u16) as u8
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.sub(0, a)
    }
    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}

/// A point of `PG(n, q)`: normalized coordinates and its global index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    pub index: usize,
    pub coords: Vec<u8>,
}

/// Quadratic form as `K` coefficients in the fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm(pub Vec<u8>);

impl QuadraticForm {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Digit string in monomial order, e.g. `"0100000000"` for `x0x1`.
    pub fn to_digits(&self) -> String {
        self.0
            .iter()
            .map(|c| char::from_digit(*c as u32, 36).unwrap())
            .collect()
    }

    pub fn from_digits(s: &str, q: u32) -> Result<Self, GeometryError> {
        s.chars()
            .map(|c| match c.to_digit(36) {
                Some(d) if d < q => Ok(d as u8),
                _ => Err(GeometryError::Parse(format!("bad form digit {c:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(QuadraticForm)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

/// A set of points as a bit mask over the global point order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Configuration(pub u64);

impl Configuration {
    pub const EMPTY: Configuration = Configuration(0);

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        Self(points.into_iter().fold(0u64, |m, i| m | (1u64 << i)))
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }
    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }
    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    #[inline]
    pub fn with(self, i: usize) -> Self {
        Self(self.0 | 1u64 << i)
    }
    #[inline]
    pub fn is_subset_of(self, other: Configuration) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn union(self, other: Configuration) -> Self {
        Self(self.0 | other.0)
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    /// Lowercase hex of the mask, least significant bit = point 0.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, GeometryError> {
        u64::from_str_radix(s, 16)
            .map(Self)
            .map_err(|e| GeometryError::Parse(format!("{s:?}: {e}")))
    }
}

/// Incremental row echelon basis over `F_q`.
#[derive(Debug, Clone)]
pub struct Echelon<'f> {
    field: &'f Field,
    width: usize,
    rows: Vec<(usize, Row)>,
}

impl<'f> Echelon<'f> {
    pub fn new(field: &'f Field, width: usize) -> Self {
        Self {
            field,
            width,
            rows: Vec::with_capacity(width),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut Row) {
        let f = self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for k in *pivot..self.width {
                    v[k] = f.sub(v[k], f.mul(c, row[k]));
                }
            }
        }
    }

    /// Insert `v`; returns whether it was independent of the current rows.
    pub fn insert(&mut self, v: &Row) -> bool {
        let mut v = *v;
        self.reduce(&mut v);
        let Some(pivot) = (0..self.width).find(|&k| v[k] != 0) else {
            return false;
        };
        let s = self.field.inv(v[pivot]);
        for k in pivot..self.width {
            v[k] = self.field.mul(v[k], s);
        }
        self.rows.push((pivot, v));
        true
    }

    /// Drop rows inserted after the first `rank`.
    pub fn truncate(&mut self, rank: usize) {
        self.rows.truncate(rank);
    }

    /// Reduced row echelon form, rows sorted by pivot.
    pub fn into_rref(mut self) -> Vec<(usize, Row)> {
        let f = self.field;
        self.rows.sort_by_key(|(p, _)| *p);
        for i in 0..self.rows.len() {
            let (p, row) = self.rows[i];
            for (j, (_, other)) in self.rows.iter_mut().enumerate() {
                if j != i && other[p] != 0 {
                    let c = other[p];
                    for k in 0..self.width {
                        other[k] = f.sub(other[k], f.mul(c, row[k]));
                    }
                }
            }
        }
        self.rows
    }
}

/// Echelonized space of quadratic forms, e.g. `I_2(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormSubspace {
    k: usize,
    rows: Vec<Row>,
}

impl FormSubspace {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<QuadraticForm> {
        self.rows
            .iter()
            .map(|r| QuadraticForm(r[..self.k].to_vec()))
            .collect()
    }

    pub(crate) fn rows(&self) -> &[Row] {
        &self.rows
    }
}

/// The ambient `PG(n, q)` with its point ordering and Veronese embedding.
pub struct Geometry {
    n: usize,
    k: usize,
    field: Field,
    points: Vec<ProjectivePoint>,
    embedded: Vec<Row>,
    lookup: HashMap<Vec<u8>, usize>,
    zero_masks: OnceLock<Vec<u64>>,
    lines: OnceLock<Vec<u64>>,
    planes: OnceLock<Vec<u64>>,
}

impl fmt::Debug for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Geometry(PG({},{}))", self.n, self.field.q)
    }
}

/// Number of points of `PG(n, q)`.
pub fn point_count(n: usize, q: u32) -> u64 {
    (0..=n).map(|i| (q as u64).pow(i as u32)).sum()
}

/// Number of quadratic monomials in `n + 1` variables.
pub fn monomial_count(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Normalized points of `PG(n, q)` in lexicographic order.
pub fn enumerate_points(n: usize, q: u32) -> Result<Vec<ProjectivePoint>, GeometryError> {
    if !(1..=5).contains(&n) {
        return Err(GeometryError::BadDimension(n));
    }
    if !is_prime(q) {
        return Err(GeometryError::NotPrime(q));
    }
    let mut out = Vec::new();
    // The first nonzero coordinate sits at position `lead`; lexicographic
    // order puts larger `lead` first.
    for lead in (0..=n).rev() {
        let tail = n - lead;
        let total = (q as u64).pow(tail as u32);
        for code in 0..total {
            let mut coords = vec![0u8; n + 1];
            coords[lead] = 1;
            let mut c = code;
            for pos in (lead + 1..=n).rev() {
                coords[pos] = (c % q as u64) as u8;
                c /= q as u64;
            }
            out.push(coords);
        }
    }
    out.sort();
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(index, coords)| ProjectivePoint { index, coords })
        .collect())
}

impl Geometry {
    pub fn new(n: usize, q: u32) -> Result<Self, GeometryError> {
        let field = Field::new(q)?;
        let count = point_count(n.clamp(1, 5), q);
        if (1..=5).contains(&n) && count > MAX_POINTS as u64 {
            return Err(GeometryError::TooManyPoints {
                n,
                q,
                points: count,
            });
        }
        let points = enumerate_points(n, q)?;
        let k = monomial_count(n);
        let embedded = points
            .iter()
            .map(|p| veronese_row(&field, &p.coords))
            .collect();
        let lookup = points.iter().map(|p| (p.coords.clone(), p.index)).collect();
        Ok(Self {
            n,
            k,
            field,
            points,
            embedded,
            lookup,
            zero_masks: OnceLock::new(),
            lines: OnceLock::new(),
            planes: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u32 {
        self.field.q as u32
    }
    /// Code dimension `K`.
    pub fn k(&self) -> usize {
        self.k
    }
    /// Code length `N`.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }
    pub fn all_points(&self) -> Configuration {
        let n = self.points.len();
        Configuration(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    /// Index of the point with the given (not necessarily normalized) coordinates.
    pub fn point_index(&self, coords: &[u8]) -> Option<usize> {
        let lead = coords.iter().position(|&c| c != 0)?;
        let s = self.field.inv(coords[lead] % self.field.q);
        let norm: Vec<u8> = coords
            .iter()
            .map(|&c| self.field.mul(c % self.field.q, s))
            .collect();
        self.lookup.get(&norm).copied()
    }

    /// Configuration from a list of coordinate tuples.
    pub fn config_of(&self, coords: &[&[u8]]) -> Configuration {
        Configuration::from_points(
            coords
                .iter()
                .map(|c| self.point_index(c).expect("nonzero point")),
        )
    }

    /// The `K` monomial values of a point.
    pub fn veronese_embed(&self, p: &ProjectivePoint) -> Vec<u8> {
        self.embedded[p.index][..self.k].to_vec()
    }

    pub(crate) fn embedded_row(&self, i: usize) -> &Row {
        &self.embedded[i]
    }

    /// The `K x N` generator matrix, row-major.
    pub fn generator_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.k)
            .map(|r| self.embedded.iter().map(|col| col[r]).collect())
            .collect()
    }

    pub fn rank_of(&self, s: Configuration) -> usize {
        let mut ech = Echelon::new(&self.field, self.k);
        for i in s.points() {
            ech.insert(&self.embedded[i]);
            if ech.rank() == self.k {
                break;
            }
        }
        ech.rank()
    }

    /// `I_2(S)`: the forms vanishing on every point of `S`, in RREF.
    pub fn vanishing_forms(&self, s: Configuration) -> FormSubspace {
        let f = &self.field;
        let mut ech = Echelon::new(f, self.k);
        for i in s.points() {
            ech.insert(&self.embedded[i]);
            if ech.rank() == self.k {
                break;
            }
        }
        let rref = ech.into_rref();
        let pivots: Vec<usize> = rref.iter().map(|(p, _)| *p).collect();
        let mut null = Echelon::new(f, self.k);
        for free in (0..self.k).filter(|c| !pivots.contains(c)) {
            let mut v = [0u8; MAX_K];
            v[free] = 1;
            for (p, row) in &rref {
                v[*p] = f.neg(row[free]);
            }
            null.insert(&v);
        }
        FormSubspace {
            k: self.k,
            rows: null.into_rref().into_iter().map(|(_, r)| r).collect(),
        }
    }

    /// Value of a form (as a row) at point `i`.
    #[inline]
    pub(crate) fn eval_row(&self, form: &Row, i: usize) -> u8 {
        let v = &self.embedded[i];
        let q = self.field.q as u32;
        let mut acc = 0u32;
        for k in 0..self.k {
            acc += form[k] as u32 * v[k] as u32;
        }
        (acc % q) as u8
    }

    pub fn eval(&self, f: &QuadraticForm, p: &ProjectivePoint) -> u8 {
        self.eval_row(&self.form_row(f), p.index)
    }

    pub(crate) fn form_row(&self, f: &QuadraticForm) -> Row {
        assert_eq!(f.0.len(), self.k, "form has wrong number of coefficients");
        let mut r = [0u8; MAX_K];
        r[..self.k].copy_from_slice(&f.0);
        r
    }

    /// Base-`q` code of a form, used to index [`Self::zero_mask_of_code`].
    #[inline]
    pub(crate) fn form_code(&self, form: &Row) -> usize {
        let q = self.field.q as usize;
        (0..self.k)
            .rev()
            .fold(0usize, |acc, k| acc * q + form[k] as usize)
    }

    fn zero_table(&self) -> &[u64] {
        self.zero_masks.get_or_init(|| {
            let q = self.field.q as usize;
            let total = q.pow(self.k as u32);
            let mut table = vec![0u64; total];
            // Odometer over coefficient vectors, with the value at every
            // point tracked incrementally.
            let npts = self.points.len();
            let mut digits = vec![0u8; self.k];
            let mut values = vec![0u8; npts];
            for (code, slot) in table.iter_mut().enumerate() {
                if code > 0 {
                    let mut pos = 0;
                    loop {
                        if (digits[pos] as usize) + 1 < q {
                            digits[pos] += 1;
                            for (p, v) in values.iter_mut().enumerate() {
                                *v = self.field.add(*v, self.embedded[p][pos]);
                            }
                            break;
                        }
                        // wrap q-1 -> 0: subtract (q-1) * column entry
                        for (p, v) in values.iter_mut().enumerate() {
                            let e = self.field.mul(self.embedded[p][pos], (q - 1) as u8);
                            *v = self.field.sub(*v, e);
                        }
                        digits[pos] = 0;
                        pos += 1;
                    }
                }
                *slot = values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v == 0)
                    .fold(0u64, |m, (p, _)| m | 1u64 << p);
            }
            table
        })
    }

    #[inline]
    pub(crate) fn zero_mask_of_code(&self, code: usize) -> u64 {
        self.zero_table()[code]
    }

    /// Force construction of the zero-set table (used before timing-sensitive work).
    pub fn warm_tables(&self) {
        self.zero_table();
        self.lines();
        self.planes();
    }

    /// Zero set of a single form among the `N` points.
    pub fn quadric_point_set(&self, f: &QuadraticForm) -> Configuration {
        let row = self.form_row(f);
        Configuration(
            (0..self.points.len())
                .filter(|&i| self.eval_row(&row, i) == 0)
                .fold(0u64, |m, i| m | 1u64 << i),
        )
    }

    /// Common zero set of a space of forms.
    pub fn zero_set(&self, w: &FormSubspace) -> Configuration {
        let mut m = self.all_points().0;
        for r in &w.rows {
            m &= self.zero_mask_of_code(self.form_code(r));
        }
        Configuration(m)
    }

    /// `V(I_2(S))`, the largest configuration with the same rank as `S`.
    pub fn closure(&self, s: Configuration) -> Configuration {
        self.zero_set(&self.vanishing_forms(s))
    }

    /// Projective span of the given points.
    pub fn span(&self, gens: &[usize]) -> Configuration {
        let q = self.field.q as u64;
        let m = gens.len();
        let mut mask = 0u64;
        for code in 1..q.pow(m as u32) {
            let mut coeffs = Vec::with_capacity(m);
            let mut c = code;
            for _ in 0..m {
                coeffs.push((c % q) as u8);
                c /= q;
            }
            let mut v = vec![0u8; self.n + 1];
            for (g, &a) in gens.iter().zip(&coeffs) {
                for (x, &y) in v.iter_mut().zip(&self.points[*g].coords) {
                    *x = self.field.add(*x, self.field.mul(a, y));
                }
            }
            if let Some(i) = self.point_index(&v) {
                mask |= 1u64 << i;
            }
        }
        Configuration(mask)
    }

    /// All lines of the ambient space, as masks.
    pub fn lines(&self) -> &[u64] {
        self.lines.get_or_init(|| {
            let npts = self.points.len();
            let mut seen = std::collections::BTreeSet::new();
            for a in 0..npts {
                for b in a + 1..npts {
                    seen.insert(self.span(&[a, b]).0);
                }
            }
            seen.into_iter().collect()
        })
    }

    /// All planes (2-dimensional projective subspaces), as masks.
    pub fn planes(&self) -> &[u64] {
        self.planes.get_or_init(|| {
            let npts = self.points.len();
            let mut seen = std::collections::BTreeSet::new();
            for &line in self.lines() {
                let l = Configuration(line);
                let (a, b) = {
                    let mut it = l.points();
                    (it.next().unwrap(), it.next().unwrap())
                };
                for c in 0..npts {
                    if !l.contains(c) {
                        seen.insert(self.span(&[a, b, c]).0);
                    }
                }
            }
            seen.into_iter().collect()
        })
    }

    /// Rank of the symmetric (Gram) matrix of a form, odd `q`.
    pub fn gram_rank(&self, f: &QuadraticForm) -> Result<usize, GeometryError> {
        let fld = &self.field;
        if fld.q == 2 {
            return Err(GeometryError::EvenCharacteristic(2));
        }
        let half = fld.inv(2);
        let dim = self.n + 1;
        let mut ech = Echelon::new(fld, dim);
        let mut gram = vec![[0u8; MAX_K]; dim];
        let mut idx = 0;
        for j in 0..dim {
            for i in 0..=j {
                let c = f.0[idx];
                idx += 1;
                if i == j {
                    gram[i][i] = c;
                } else {
                    let h = fld.mul(c, half);
                    gram[i][j] = h;
                    gram[j][i] = h;
                }
            }
        }
        for row in &gram {
            ech.insert(row);
        }
        Ok(ech.rank())
    }

    /// Orbit label `1..=6` of a nonzero form on `PG(3, q)`, `q` odd.
    ///
    /// The orbit is read off the pair (Gram rank, number of zeros):
    /// pair of planes, hyperbolic, double plane, cone, elliptic, and the
    /// line cut out by an irreducible binary form.
    pub fn classify_form(&self, f: &QuadraticForm) -> Result<FormOrbit, GeometryError> {
        if self.n != 3 {
            return Err(GeometryError::UnsupportedDimension(self.n));
        }
        if self.field.q == 2 {
            return Err(GeometryError::EvenCharacteristic(2));
        }
        if f.is_zero() {
            return Err(GeometryError::ZeroForm);
        }
        let gram_rank = self.gram_rank(f)?;
        let zeros = self.quadric_point_set(f).len();
        let q = self.field.q as u32;
        let sig = (gram_rank, zeros);
        FormOrbit::ALL
            .into_iter()
            .find(|o| o.signature(q) == sig)
            .ok_or(GeometryError::UnknownSignature { gram_rank, zeros })
    }

    /// Number of nonzero codewords (forms) with exactly `z` zeros, for `z = 0..=N`.
    pub fn zero_count_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.points.len() + 1];
        for &m in &self.zero_table()[1..] {
            hist[m.count_ones() as usize] += 1;
        }
        hist
    }

    /// Orbit sizes over all projective forms (leading coefficient 1), `n = 3`, `q` odd.
    pub fn form_census(&self) -> Result<[u64; 6], GeometryError> {
        let q = self.field.q as usize;
        let mut census = [0u64; 6];
        for code in 1..q.pow(self.k as u32) {
            let mut digits = Vec::with_capacity(self.k);
            let mut c = code;
            for _ in 0..self.k {
                digits.push((c % q) as u8);
                c /= q;
            }
            if digits.iter().find(|&&d| d != 0) != Some(&1) {
                continue;
            }
            census[self.classify_form(&QuadraticForm(digits))?.index()] += 1;
        }
        Ok(census)
    }

    /// Orbit counts over the `q + 1` projective members of a pencil.
    pub fn pencil_signature(&self, w: &FormSubspace) -> Result<[u32; 6], GeometryError> {
        if w.dim() != 2 {
            return Err(GeometryError::WrongDimension {
                expected: 2,
                got: w.dim(),
            });
        }
        let fld = &self.field;
        let (a, b) = (w.rows[0], w.rows[1]);
        let mut members = vec![a];
        for lambda in 0..fld.q {
            let mut m = [0u8; MAX_K];
            for k in 0..self.k {
                m[k] = fld.add(b[k], fld.mul(lambda, a[k]));
            }
            members.push(m);
        }
        let mut nu = [0u32; 6];
        for m in members {
            let o = self.classify_form(&QuadraticForm(m[..self.k].to_vec()))?;
            nu[o.index()] += 1;
        }
        Ok(nu)
    }
}

fn veronese_row(field: &Field, coords: &[u8]) -> Row {
    let mut row = [0u8; MAX_K];
    let mut idx = 0;
    for j in 0..coords.len() {
        for i in 0..=j {
            row[idx] = field.mul(coords[i], coords[j]);
            idx += 1;
        }
    }
    row
}

/// The six orbits of nonzero quadratic forms on `PG(3, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormOrbit {
    /// Pair of distinct planes, `X0 X1`.
    O1,
    /// Hyperbolic quadric, `X0 X3 - X1 X2`.
    O2,
    /// Repeated plane, `X0^2`.
    O3,
    /// Quadratic cone, `X1^2 - X0 X2`.
    O4,
    /// Elliptic quadric.
    O5,
    /// Line cut out by an irreducible binary form.
    O6,
}

impl FormOrbit {
    pub const ALL: [FormOrbit; 6] = [
        FormOrbit::O1,
        FormOrbit::O2,
        FormOrbit::O3,
        FormOrbit::O4,
        FormOrbit::O5,
        FormOrbit::O6,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// (Gram rank, zero count) for odd `q`.
    pub fn signature(self, q: u32) -> (usize, u32) {
        match self {
            FormOrbit::O1 => (2, 2 * q * q + q + 1),
            FormOrbit::O2 => (4, (q + 1) * (q + 1)),
            FormOrbit::O3 => (1, q * q + q + 1),
            FormOrbit::O4 => (3, q * q + q + 1),
            FormOrbit::O5 => (4, q * q + 1),
            FormOrbit::O6 => (2, q + 1),
        }
    }

    /// Number of projective forms in the orbit.
    pub fn size(self, q: u64) -> u64 {
        match self {
            FormOrbit::O1 => {
                let planes = q * q * q + q * q + q + 1;
                planes * (planes - 1) / 2
            }
            FormOrbit::O2 => (q.pow(6) + q.pow(4)) * (q.pow(3) - 1) / 2,
            FormOrbit::O3 => (1 + q) * (1 + q * q),
            FormOrbit::O4 => (1 + q) * (1 + q * q) * (q.pow(5) - q * q),
            FormOrbit::O5 => (q.pow(6) - q.pow(4)) * (q.pow(3) - 1) / 2,
            FormOrbit::O6 => (q.pow(3) - 1) * (q.pow(3) + q) / 2,
        }
    }
}

impl fmt::Display for FormOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{}", self.index() + 1)
    }
}
