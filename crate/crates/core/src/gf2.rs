//! Linear algebra over GF(2) on single-word vectors.
//!
//! Vectors live in `F_2^k` with `k <= 64`, so every vector is one `u64` and
//! addition is XOR. [`Subspace`] keeps a reduced row-echelon basis whose
//! pivots sit at the lowest set bit of each basis vector, and
//! [`Decomposition`] pairs a subspace with a direct-sum complement so that
//! every vector splits uniquely into a `W` part and a complement part.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

pub const MAX_WIDTH: u32 = 64;

/// A vector of `F_2^k`, stored in the low `k` bits of a word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gf2Vec(pub u64);

impl Gf2Vec {
    pub const ZERO: Gf2Vec = Gf2Vec(0);

    #[inline]
    pub fn unit(i: u32) -> Self {
        Gf2Vec(1u64 << i)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn bit(self, i: u32) -> bool {
        (self.0 >> i) & 1 == 1
    }

    /// Index of the lowest set bit, `None` for the zero vector.
    #[inline]
    pub fn lowest_bit(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    /// Standard inner product `sum_i a_i b_i`.
    #[inline]
    pub fn dot(self, other: Gf2Vec) -> bool {
        (self.0 & other.0).count_ones() & 1 == 1
    }

    /// Renders the low `width` bits, most significant bit first.
    pub fn to_bit_string(self, width: u32) -> String {
        (0..width)
            .rev()
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }
}

impl Add for Gf2Vec {
    type Output = Gf2Vec;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf2Vec) -> Gf2Vec {
        Gf2Vec(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf2Vec {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf2Vec) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vec({:#b})", self.0)
    }
}

impl From<u64> for Gf2Vec {
    fn from(bits: u64) -> Self {
        Gf2Vec(bits)
    }
}

/// Mask with the low `width` bits set.
#[inline]
pub fn width_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// A linear subspace of `F_2^k` in reduced row-echelon form.
///
/// Every basis vector has its pivot at its lowest set bit and no other basis
/// vector has that bit set. Basis vectors are kept sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    width: u32,
    basis: Vec<Gf2Vec>,
    /// For each basis vector (same order), the index of the input vector
    /// whose addition created that pivot.
    sources: Vec<usize>,
}

impl Subspace {
    pub fn zero(width: u32) -> Self {
        assert!(width <= MAX_WIDTH, "GF(2) width {width} exceeds {MAX_WIDTH}");
        Subspace {
            width,
            basis: Vec::new(),
            sources: Vec::new(),
        }
    }

    pub fn full(width: u32) -> Self {
        span_basis(width, (0..width).map(Gf2Vec::unit))
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Gf2Vec] {
        &self.basis
    }

    /// Input indices of the vectors that contributed a new pivot, in the order
    /// they were accepted. These form a basis of the span drawn from the input.
    pub fn source_indices(&self) -> Vec<usize> {
        let mut idx = self.sources.clone();
        idx.sort_unstable();
        idx
    }

    /// Pivot positions, ascending.
    pub fn pivots(&self) -> Vec<u32> {
        self.basis
            .iter()
            .map(|b| b.lowest_bit().expect("basis vectors are nonzero"))
            .collect()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: Gf2Vec) -> Gf2Vec {
        for b in &self.basis {
            let pivot = b.0.trailing_zeros();
            if v.bit(pivot) {
                v += *b;
            }
        }
        v
    }

    pub fn contains(&self, v: Gf2Vec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns `true` if the dimension grew.
    fn insert(&mut self, v: Gf2Vec, source: usize) -> bool {
        let r = self.reduce(Gf2Vec(v.0 & width_mask(self.width)));
        let Some(pivot) = r.lowest_bit() else {
            return false;
        };
        for b in self.basis.iter_mut() {
            if b.bit(pivot) {
                *b += r;
            }
        }
        let pos = self
            .basis
            .partition_point(|b| b.0.trailing_zeros() < pivot);
        self.basis.insert(pos, r);
        self.sources.insert(pos, source);
        true
    }

    /// Enumerates the `2^dim` elements of the subspace. Intended for small dims.
    pub fn elements(&self) -> impl Iterator<Item = Gf2Vec> + '_ {
        assert!(self.dim() < 32, "refusing to enumerate 2^{} elements", self.dim());
        (0u64..1u64 << self.dim()).map(move |mask| {
            let mut acc = Gf2Vec::ZERO;
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                acc += self.basis[i];
                m &= m - 1;
            }
            acc
        })
    }
}

/// Reduced basis of the span of `vectors` inside `F_2^width`.
pub fn span_basis<I>(width: u32, vectors: I) -> Subspace
where
    I: IntoIterator<Item = Gf2Vec>,
{
    let mut space = Subspace::zero(width);
    for (i, v) in vectors.into_iter().enumerate() {
        if space.dim() == width as usize {
            break;
        }
        space.insert(v, i);
    }
    space
}

/// A direct sum `F_2^k = W (+) W'` together with the coordinate maps it induces.
///
/// The complement `W'` stands in for the quotient `F_2^k / W`: the complement
/// coordinates of `x` ([`Decomposition::coset_label`]) depend only on the
/// coset `x + W`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    width: u32,
    w: Subspace,
    complement: Vec<Gf2Vec>,
    /// Row `j` holds the coordinates of the unit vector `e_j` in the combined
    /// basis `[W basis..., complement...]`.
    unit_coords: Vec<u64>,
}

impl Decomposition {
    pub fn w(&self) -> &Subspace {
        &self.w
    }

    /// Dimension of `W`.
    pub fn ell(&self) -> usize {
        self.w.dim()
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Basis of the complement `W'`, ascending unit vectors.
    pub fn complement(&self) -> &[Gf2Vec] {
        &self.complement
    }

    pub fn complement_dim(&self) -> usize {
        self.complement.len()
    }

    fn coords(&self, x: Gf2Vec) -> u64 {
        let mut c = 0u64;
        let mut bits = x.0 & width_mask(self.width);
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            c ^= self.unit_coords[j];
            bits &= bits - 1;
        }
        c
    }

    /// The `W` component of `x`.
    pub fn proj_w(&self, x: Gf2Vec) -> Gf2Vec {
        let c = self.coords(x);
        let mut acc = Gf2Vec::ZERO;
        for (i, b) in self.w.basis().iter().enumerate() {
            if (c >> i) & 1 == 1 {
                acc += *b;
            }
        }
        acc
    }

    /// The complement component of `x`, as a vector of `F_2^k` lying in `W'`.
    pub fn proj_u_lift(&self, x: Gf2Vec) -> Gf2Vec {
        let label = self.coset_label(x);
        self.lift_label(label)
    }

    /// Maps complement coordinates back to the vector of `W'` they describe.
    pub fn lift_label(&self, label: Gf2Vec) -> Gf2Vec {
        let mut acc = Gf2Vec::ZERO;
        for (i, b) in self.complement.iter().enumerate() {
            if label.bit(i as u32) {
                acc += *b;
            }
        }
        acc
    }

    /// Complement coordinates of `x` (a vector of width `k - ell`).
    ///
    /// Equal for `x` and `y` exactly when `x + y` lies in `W`.
    pub fn coset_label(&self, x: Gf2Vec) -> Gf2Vec {
        Gf2Vec(self.coords(x) >> self.ell())
    }

    /// Number of distinct coset labels, `2^(k - ell)`.
    pub fn coset_count(&self) -> u64 {
        1u64 << self.complement_dim()
    }
}

/// Extends the basis of `w` greedily with unit vectors `e_0, e_1, ...` to a
/// basis of `F_2^width`, and precomputes the coordinate change.
pub fn decompose(w: &Subspace, width: u32) -> Decomposition {
    assert_eq!(w.width(), width, "subspace width mismatch");
    let mut grown = w.clone();
    let mut complement = Vec::new();
    for i in 0..width {
        if grown.dim() == width as usize {
            break;
        }
        let e = Gf2Vec::unit(i);
        if grown.insert(e, usize::MAX) {
            complement.push(e);
        }
    }

    // Invert the k x k matrix whose columns are the combined basis.
    let combined: Vec<Gf2Vec> = w.basis().iter().chain(complement.iter()).copied().collect();
    let k = width as usize;
    debug_assert_eq!(combined.len(), k);
    // rows[j]: bit i = component j of combined[i]; augmented with identity.
    let mut rows: Vec<(u64, u64)> = (0..k)
        .map(|j| {
            let mut r = 0u64;
            for (i, b) in combined.iter().enumerate() {
                if b.bit(j as u32) {
                    r |= 1 << i;
                }
            }
            (r, 1u64 << j)
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| (rows[r].0 >> col) & 1 == 1)
            .expect("combined basis is invertible");
        rows.swap(col, pivot);
        let (pr, pa) = rows[col];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && (row.0 >> col) & 1 == 1 {
                row.0 ^= pr;
                row.1 ^= pa;
            }
        }
    }
    // After elimination row i of the augmented part gives coordinate i as a
    // linear form in the components of x; transpose into per-unit columns.
    let mut unit_coords = vec![0u64; k];
    for (i, row) in rows.iter().enumerate() {
        let mut a = row.1;
        while a != 0 {
            let j = a.trailing_zeros() as usize;
            unit_coords[j] |= 1 << i;
            a &= a - 1;
        }
    }

    Decomposition {
        width,
        w: w.clone(),
        complement,
        unit_coords,
    }
}
