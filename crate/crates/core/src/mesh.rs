//! Uniform 1-D discretization of Ω = (a, b) with exterior handling and the
//! precomputed singular-kernel quadrature.
//!
//! Nodes sit at cell midpoints x_i = a + (i + 1/2)h. The complement of Ω is
//! covered by exterior cells of the same width out to a truncation box of
//! half-width ≈ R (snapped to the cell lattice), beyond which the kernel
//! integral has a closed form. All node/cell distances are integer
//! multiples of h, so pair weights depend on |i − j| only and symmetry is
//! exact by construction.

use crate::error::{Error, Result};
use crate::pointwise::Exponents;
use crate::real::{abs_pow, Real};
use std::fmt;
use std::sync::Arc;

/// Boundary data on the complement of Ω.
#[derive(Clone)]
pub enum ExteriorData<T> {
    Zero,
    Constant(T),
    Sampled(Arc<dyn Fn(T) -> T + Send + Sync>),
}

impl<T: Real> ExteriorData<T> {
    pub fn eval(&self, x: T) -> T {
        match self {
            ExteriorData::Zero => T::zero(),
            ExteriorData::Constant(c) => *c,
            ExteriorData::Sampled(f) => f(x),
        }
    }

    /// True when the data is constant in space (enables the closed-form
    /// exterior integral).
    pub fn constant_value(&self) -> Option<T> {
        match self {
            ExteriorData::Zero => Some(T::zero()),
            ExteriorData::Constant(c) => Some(*c),
            ExteriorData::Sampled(_) => None,
        }
    }

    /// Pointwise difference of two exterior descriptors.
    pub fn sub(&self, other: &Self) -> Self {
        match (self.constant_value(), other.constant_value()) {
            (Some(x), Some(y)) => {
                if x == y {
                    if x == T::zero() {
                        ExteriorData::Zero
                    } else {
                        ExteriorData::Constant(T::zero())
                    }
                } else {
                    ExteriorData::Constant(x - y)
                }
            }
            _ => {
                let lhs = self.clone();
                let rhs = other.clone();
                ExteriorData::Sampled(Arc::new(move |x| lhs.eval(x) - rhs.eval(x)))
            }
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for ExteriorData<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExteriorData::Zero => write!(f, "Zero"),
            ExteriorData::Constant(c) => write!(f, "Constant({c:?})"),
            ExteriorData::Sampled(_) => write!(f, "Sampled(..)"),
        }
    }
}

/// Uniform mesh over Ω = (a, b) with N interior nodes and a lattice-snapped
/// truncation box.
#[derive(Clone, Debug)]
pub struct Grid<T> {
    a: T,
    b: T,
    n: usize,
    h: T,
    trunc_radius: T,
    ext_cells_per_side: usize,
    exterior: ExteriorData<T>,
}

pub fn build_grid<T: Real>(
    a: T,
    b: T,
    n: usize,
    trunc_radius: T,
    exterior: ExteriorData<T>,
) -> Result<Arc<Grid<T>>> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidGrid(format!("need a < b, got a = {a}, b = {b}")));
    }
    if n < 4 {
        return Err(Error::InvalidGrid(format!("need at least 4 interior nodes, got {n}")));
    }
    let width = b - a;
    if !(trunc_radius.is_finite() && trunc_radius >= T::of(2.0) * width) {
        return Err(Error::InvalidGrid(format!(
            "truncation radius {trunc_radius} must be at least 2(b−a) = {}",
            T::of(2.0) * width
        )));
    }
    let h = width / T::of(n as f64);
    // Snap the box half-width to the cell lattice: R ≈ (b−a)/2 + K·h.
    let per_side = (trunc_radius - width / T::of(2.0)) / h;
    let k = per_side
        .round()
        .to_f64_lossy()
        .max(1.0) as usize;
    Ok(Arc::new(Grid {
        a,
        b,
        n,
        h,
        trunc_radius,
        ext_cells_per_side: k,
        exterior,
    }))
}

impl<T: Real> Grid<T> {
    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> T {
        self.h
    }

    pub fn measure(&self) -> T {
        self.b - self.a
    }

    pub fn requested_radius(&self) -> T {
        self.trunc_radius
    }

    pub fn exterior(&self) -> &ExteriorData<T> {
        &self.exterior
    }

    pub fn ext_cells_per_side(&self) -> usize {
        self.ext_cells_per_side
    }

    /// Interior node x_i = a + (i + 1/2)h.
    pub fn node(&self, i: usize) -> T {
        debug_assert!(i < self.n);
        self.a + (T::of(i as f64) + T::of(0.5)) * self.h
    }

    pub fn nodes(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Midpoint of the k-th exterior cell left of a (k = 0 touches a).
    pub fn left_cell(&self, k: usize) -> T {
        self.a - (T::of(k as f64) + T::of(0.5)) * self.h
    }

    /// Midpoint of the k-th exterior cell right of b.
    pub fn right_cell(&self, k: usize) -> T {
        self.b + (T::of(k as f64) + T::of(0.5)) * self.h
    }

    /// Left edge of the truncation box (lattice-snapped).
    pub fn box_left(&self) -> T {
        self.a - T::of(self.ext_cells_per_side as f64) * self.h
    }

    pub fn box_right(&self) -> T {
        self.b + T::of(self.ext_cells_per_side as f64) * self.h
    }

    /// Effective box half-width actually used, for run manifests.
    pub fn effective_radius(&self) -> T {
        (self.box_right() - self.box_left()) / T::of(2.0)
    }

    pub fn contains(&self, x: T) -> bool {
        x > self.a && x < self.b
    }

    pub fn same_discretization(&self, other: &Grid<T>) -> bool {
        self.a == other.a
            && self.b == other.b
            && self.n == other.n
            && self.ext_cells_per_side == other.ext_cells_per_side
    }
}

/// Nodal values on a grid, plus exterior data (inherited from the grid or
/// overridden per field).
#[derive(Clone, Debug)]
pub struct Field<T> {
    grid: Arc<Grid<T>>,
    values: Vec<T>,
    exterior: ExteriorData<T>,
}

impl<T: Real> Field<T> {
    pub fn new(grid: &Arc<Grid<T>>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Mismatch(format!(
                "field has {} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("field values must be finite".into()));
        }
        Ok(Self {
            grid: Arc::clone(grid),
            values,
            exterior: grid.exterior().clone(),
        })
    }

    pub fn zero(grid: &Arc<Grid<T>>) -> Self {
        Self {
            grid: Arc::clone(grid),
            values: vec![T::zero(); grid.len()],
            exterior: grid.exterior().clone(),
        }
    }

    pub fn constant(grid: &Arc<Grid<T>>, value: T) -> Self {
        Self {
            grid: Arc::clone(grid),
            values: vec![value; grid.len()],
            exterior: grid.exterior().clone(),
        }
    }

    pub fn from_fn(grid: &Arc<Grid<T>>, f: impl Fn(T) -> T) -> Self {
        let values = grid.nodes().map(f).collect();
        Self {
            grid: Arc::clone(grid),
            values,
            exterior: grid.exterior().clone(),
        }
    }

    /// Smooth compactly supported bump of the given height, centered in Ω
    /// and vanishing to all orders at the boundary.
    pub fn bump(grid: &Arc<Grid<T>>, height: T) -> Self {
        let a = grid.a();
        let b = grid.b();
        Self::from_fn(grid, |x| {
            let xi = (T::of(2.0) * x - (a + b)) / (b - a);
            let denom = T::one() - xi * xi;
            if denom <= T::zero() {
                T::zero()
            } else {
                height * (T::one() - denom.recip()).exp()
            }
        })
    }

    pub fn with_exterior(mut self, exterior: ExteriorData<T>) -> Self {
        self.exterior = exterior;
        self
    }

    pub fn grid(&self) -> &Arc<Grid<T>> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn exterior(&self) -> &ExteriorData<T> {
        &self.exterior
    }

    /// Evaluate at an arbitrary point: nodal value (by cell index) inside Ω,
    /// exterior data outside.
    pub fn value_at(&self, x: T) -> T {
        if self.grid.contains(x) {
            let idx = ((x - self.grid.a()) / self.grid.spacing())
                .floor()
                .to_f64_lossy() as usize;
            self.values[idx.min(self.grid.len() - 1)]
        } else {
            self.exterior.eval(x)
        }
    }

    /// Nodewise difference u − v; exterior descriptors subtract too.
    pub fn sub(&self, other: &Field<T>) -> Result<Field<T>> {
        if !self.grid.same_discretization(&other.grid) {
            return Err(Error::Mismatch("fields live on different grids".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| x - y)
            .collect();
        Ok(Field {
            grid: Arc::clone(&self.grid),
            values,
            exterior: self.exterior.sub(&other.exterior),
        })
    }

    pub fn scale(&self, c: T) -> Field<T> {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v = *v * c;
        }
        // Constant exterior data scales with the field; sampled data wraps.
        out.exterior = match &self.exterior {
            ExteriorData::Zero => ExteriorData::Zero,
            ExteriorData::Constant(g) => ExteriorData::Constant(*g * c),
            ExteriorData::Sampled(f) => {
                let f = Arc::clone(f);
                ExteriorData::Sampled(Arc::new(move |x| f(x) * c))
            }
        };
        out
    }
}

/// Pair-weight quadrature for the kernel |x − y|^{−(1+sp)} on a given grid.
///
/// `weight(i, j)` is the exact integral of the kernel over cell j seen from
/// node i (zero on the diagonal, where the symmetric principal value
/// cancels at leading order). Exterior cells reuse the same distance table;
/// the tail beyond the truncation box is the exact power-law integral.
#[derive(Clone, Debug)]
pub struct KernelWeights<T> {
    grid: Arc<Grid<T>>,
    s: T,
    p: T,
    /// wd[m] = ∫_{cell at distance m·h} |x − y|^{−(1+sp)} dy, m ≥ 1; wd[0] = 0.
    wd: Vec<T>,
    tail_left: Vec<T>,
    tail_right: Vec<T>,
    /// Closed-form integral of the kernel over all of ℝ∖Ω per node.
    ext_closed: Vec<T>,
    rule: &'static str,
}

pub fn build_kernel<T: Real>(grid: &Arc<Grid<T>>, e: &Exponents<T>) -> Result<KernelWeights<T>> {
    if e.n() != 1 {
        return Err(Error::Mismatch(format!(
            "kernel quadrature is 1-D only, exponents have n = {}",
            e.n()
        )));
    }
    let sp = e.sp();
    let h = grid.spacing();
    let half = h / T::of(2.0);
    let n = grid.len();
    let k = grid.ext_cells_per_side();

    // Exact integral of |x−y|^{−(1+sp)} over a cell of width h whose
    // midpoint is at distance d = m·h: [(d−h/2)^{−sp} − (d+h/2)^{−sp}]/(sp).
    let cell = |m: usize| -> T {
        let d = T::of(m as f64) * h;
        (abs_pow(d - half, -sp) - abs_pow(d + half, -sp)) / sp
    };
    let mut wd = Vec::with_capacity(n + k + 1);
    wd.push(T::zero());
    for m in 1..=(n + k) {
        wd.push(cell(m));
    }

    let mut tail_left = Vec::with_capacity(n);
    let mut tail_right = Vec::with_capacity(n);
    let mut ext_closed = Vec::with_capacity(n);
    for i in 0..n {
        // Distances from x_i to domain and box edges are half-integer
        // multiples of h; assemble them from integers to keep them exact.
        let to_a = (T::of(i as f64) + T::of(0.5)) * h;
        let to_b = (T::of((n - i) as f64) - T::of(0.5)) * h;
        let to_box_l = to_a + T::of(k as f64) * h;
        let to_box_r = to_b + T::of(k as f64) * h;
        tail_left.push(abs_pow(to_box_l, -sp) / sp);
        tail_right.push(abs_pow(to_box_r, -sp) / sp);
        ext_closed.push((abs_pow(to_a, -sp) + abs_pow(to_b, -sp)) / sp);
    }

    Ok(KernelWeights {
        grid: Arc::clone(grid),
        s: e.s(),
        p: e.p(),
        wd,
        tail_left,
        tail_right,
        ext_closed,
        rule: "cell-exact-1d",
    })
}

impl<T: Real> KernelWeights<T> {
    pub fn grid(&self) -> &Arc<Grid<T>> {
        &self.grid
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn rule(&self) -> &'static str {
        self.rule
    }

    /// Pair weight between interior nodes i and j.
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> T {
        self.wd[i.abs_diff(j)]
    }

    /// Weight of the cell at lattice distance m·h (shared by interior and
    /// exterior cells).
    #[inline]
    pub fn weight_at_distance(&self, m: usize) -> T {
        self.wd[m]
    }

    /// Kernel mass beyond the truncation box, per side.
    pub fn tail_left(&self, i: usize) -> T {
        self.tail_left[i]
    }

    pub fn tail_right(&self, i: usize) -> T {
        self.tail_right[i]
    }

    /// Total tail coefficient of node i.
    pub fn tail(&self, i: usize) -> T {
        self.tail_left[i] + self.tail_right[i]
    }

    /// Closed-form kernel integral over all of ℝ∖Ω seen from node i.
    pub fn exterior_total(&self, i: usize) -> T {
        self.ext_closed[i]
    }

    pub fn check_compatible(&self, field: &Field<T>, e: &Exponents<T>) -> Result<()> {
        if !self.grid.same_discretization(field.grid()) {
            return Err(Error::Mismatch("kernel and field use different grids".into()));
        }
        if self.s != e.s() || self.p != e.p() {
            return Err(Error::Mismatch(format!(
                "kernel built for (s, p) = ({}, {}), asked to apply with ({}, {})",
                self.s,
                self.p,
                e.s(),
                e.p()
            )));
        }
        Ok(())
    }
}
