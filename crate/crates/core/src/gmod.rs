//! Finitely generated graded right modules over `R = Λ(x_0, …, x_n)`.
//!
//! A module stores, for every degree `d` in its support, the dimension of
//! `M_d` and for every indeterminate `x_i` the matrix `X_i[d]` of shape
//! `dim M_d × dim M_{d+1}`. An element `v ∈ M_d` (a row vector) maps to
//! `v · X_i[d]`.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::ExtMonomial;
use crate::homalg::hom_basis;
use crate::linalg::{Fp, Mat, Subspace};

#[derive(Clone, PartialEq, Eq)]
pub struct GradedModule {
    field: Fp,
    n_vars: usize,
    min_deg: i32,
    dims: Vec<usize>,
    /// `actions[i][k]` maps degree `min_deg + k` to `min_deg + k + 1`.
    actions: Vec<Vec<Mat>>,
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedModule(n+1={}, dims={:?})", self.n_vars, self.dims_map())
    }
}

impl GradedModule {
    /// Assemble a module from per-degree dimensions and action matrices.
    ///
    /// `actions[i]` lists the matrices of `x_i` for degrees
    /// `min_deg, …, min_deg + dims.len() - 2`. Only shapes are checked here;
    /// the relations are checked by [`GradedModule::validate`].
    pub fn new(field: Fp, n_vars: usize, min_deg: i32, dims: Vec<usize>, actions: Vec<Vec<Mat>>) -> Result<Self> {
        if actions.len() != n_vars {
            return Err(Error::InvalidModule(format!("{} action families for {} variables", actions.len(), n_vars)));
        }
        let steps = dims.len().saturating_sub(1);
        for (i, fam) in actions.iter().enumerate() {
            if fam.len() != steps {
                return Err(Error::InvalidModule(format!("x_{} has {} matrices, expected {}", i, fam.len(), steps)));
            }
            for (k, m) in fam.iter().enumerate() {
                if m.rows() != dims[k] || m.cols() != dims[k + 1] {
                    return Err(Error::InvalidModule(format!(
                        "x_{} at degree {} has shape {}x{}, expected {}x{}",
                        i,
                        min_deg + k as i32,
                        m.rows(),
                        m.cols(),
                        dims[k],
                        dims[k + 1]
                    )));
                }
                if m.field() != field {
                    return Err(Error::ModulusMismatch(m.field().p(), field.p()));
                }
            }
        }
        let mut m = GradedModule { field, n_vars, min_deg, dims, actions };
        m.normalize();
        Ok(m)
    }

    /// Build from a closure giving the matrix of `x_i` at degree `d`.
    pub fn from_fn(
        field: Fp,
        n_vars: usize,
        min_deg: i32,
        dims: Vec<usize>,
        mut action: impl FnMut(usize, i32) -> Mat,
    ) -> Self {
        let steps = dims.len().saturating_sub(1);
        let actions = (0..n_vars).map(|i| (0..steps).map(|k| action(i, min_deg + k as i32)).collect()).collect();
        GradedModule::new(field, n_vars, min_deg, dims, actions).expect("shape-consistent module")
    }

    pub fn zero(field: Fp, n_vars: usize) -> Self {
        GradedModule { field, n_vars, min_deg: 0, dims: Vec::new(), actions: vec![Vec::new(); n_vars] }
    }

    /// Trim zero degrees at both ends.
    fn normalize(&mut self) {
        let lead = self.dims.iter().take_while(|&&d| d == 0).count();
        if lead == self.dims.len() {
            *self = GradedModule::zero(self.field, self.n_vars);
            return;
        }
        let trail = self.dims.iter().rev().take_while(|&&d| d == 0).count();
        let keep = self.dims.len() - lead - trail;
        self.dims = self.dims[lead..lead + keep].to_vec();
        for fam in &mut self.actions {
            *fam = fam.drain(..).skip(lead).take(keep.saturating_sub(1)).collect();
        }
        self.min_deg += lead as i32;
    }

    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }
    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Lowest and highest degree with `M_d ≠ 0`.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        if self.dims.is_empty() {
            None
        } else {
            Some((self.min_deg, self.min_deg + self.dims.len() as i32 - 1))
        }
    }

    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.min_deg..self.min_deg + self.dims.len() as i32
    }

    pub fn dim(&self, d: i32) -> usize {
        let k = d - self.min_deg;
        if k < 0 || k as usize >= self.dims.len() {
            0
        } else {
            self.dims[k as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dims_map(&self) -> BTreeMap<i32, usize> {
        self.degrees().map(|d| (d, self.dim(d))).collect()
    }

    /// Matrix of `x_i` from degree `d` to `d+1` (zero-filled outside the support).
    pub fn action(&self, i: usize, d: i32) -> Cow<'_, Mat> {
        let k = d - self.min_deg;
        if k >= 0 && (k as usize + 1) < self.dims.len() {
            Cow::Borrowed(&self.actions[i][k as usize])
        } else {
            Cow::Owned(Mat::zero(self.field, self.dim(d), self.dim(d + 1)))
        }
    }

    /// `v · x_i` for `v ∈ M_d`.
    pub fn act(&self, v: &[u32], i: usize, d: i32) -> Vec<u32> {
        self.action(i, d).apply_row(v)
    }

    /// Matrix of right multiplication by the linear form `Σ c_i x_i` at degree `d`.
    pub fn form_matrix(&self, form: &[u32], d: i32) -> Mat {
        assert_eq!(form.len(), self.n_vars);
        let mut m = Mat::zero(self.field, self.dim(d), self.dim(d + 1));
        for (i, &c) in form.iter().enumerate() {
            if c != 0 {
                m.axpy(c, &self.action(i, d));
            }
        }
        m
    }

    /// `v · μ` for `v ∈ M_d` and a monomial `μ`, applying the variables in
    /// increasing index order.
    pub fn act_monomial(&self, v: &[u32], d: i32, mono: ExtMonomial) -> Vec<u32> {
        let mut w = v.to_vec();
        for (k, i) in mono.indices().into_iter().enumerate() {
            w = self.act(&w, i, d + k as i32);
        }
        w
    }

    /// Matrix of right multiplication by a monomial, from degree `d`.
    pub fn monomial_matrix(&self, d: i32, mono: ExtMonomial) -> Mat {
        let mut m = Mat::identity(self.field, self.dim(d));
        for (k, i) in mono.indices().into_iter().enumerate() {
            m = m.mul(&self.action(i, d + k as i32));
        }
        m
    }

    /// Check the square-zero and anticommutation relations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.dims.len() >= 3 {
            for d in self.min_deg..self.min_deg + self.dims.len() as i32 - 2 {
                for i in 0..self.n_vars {
                    let xi = self.action(i, d);
                    if !xi.mul(&self.action(i, d + 1)).is_zero() {
                        violations.push(Violation::SquareZero { i, d });
                    }
                    for j in i + 1..self.n_vars {
                        let s = xi.mul(&self.action(j, d + 1)).add(&self.action(j, d).mul(&self.action(i, d + 1)));
                        if !s.is_zero() {
                            violations.push(Violation::Anticommute { i, j, d });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Like [`GradedModule::validate`] but as a `Result`.
    pub fn check(&self) -> Result<()> {
        let r = self.validate();
        match r.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidModule(v.to_string())),
        }
    }

    /// `M(i)` with `M(i)_j = M_{i+j}`.
    pub fn shift(&self, i: i32) -> GradedModule {
        let mut m = self.clone();
        if !m.is_zero() {
            m.min_deg -= i;
        }
        m
    }

    /// Graded dual `M*` with `(M*)_j = (M_{-j})*` and `x_i` acting at degree
    /// `-d-1` by the transpose of `X_i[d]`.
    pub fn dual(&self) -> GradedModule {
        if self.is_zero() {
            return self.clone();
        }
        let len = self.dims.len();
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let actions =
            self.actions.iter().map(|fam| (0..len - 1).map(|k| fam[len - 2 - k].transpose()).collect()).collect();
        let (_, hi) = self.degree_range().unwrap();
        GradedModule { field: self.field, n_vars: self.n_vars, min_deg: -hi, dims, actions }
    }

    /// Replace each `x_i` by the linear form `Σ_k g[i][k] x_k`. For invertible
    /// `g` this transports a module along an automorphism of `R`.
    pub fn transport(&self, g: &Mat) -> Result<GradedModule> {
        if g.rows() != self.n_vars || g.cols() != self.n_vars {
            return Err(Error::DimensionMismatch("substitution matrix shape".into()));
        }
        Ok(GradedModule::from_fn(self.field, self.n_vars, self.min_deg, self.dims.clone(), |i, d| {
            self.form_matrix(g.row(i), d)
        }))
    }

    fn check_compatible(&self, other: &GradedModule) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.field.p(), other.field.p()));
        }
        if self.n_vars != other.n_vars {
            return Err(Error::VariableMismatch(self.n_vars, other.n_vars));
        }
        Ok(())
    }

    /// Socle, radical and generator counts per degree.
    pub fn socle_radical(&self) -> SocleRadical {
        let f = self.field;
        let mut socle = BTreeMap::new();
        let mut radical = BTreeMap::new();
        let mut top_dims = BTreeMap::new();
        for d in self.degrees() {
            let n = self.dim(d);
            let cols: Vec<Cow<Mat>> = (0..self.n_vars).map(|i| self.action(i, d)).collect();
            let refs: Vec<&Mat> = cols.iter().map(|c| c.as_ref()).collect();
            let soc = Mat::hstack(f, n, &refs).left_kernel();
            let rad = self.radical_at(d);
            if n > rad.dim() {
                top_dims.insert(d, n - rad.dim());
            }
            socle.insert(d, soc);
            radical.insert(d, rad);
        }
        SocleRadical { socle, radical, top_dims }
    }

    /// `(MJ)_d = Σ_i M_{d-1} x_i`.
    pub fn radical_at(&self, d: i32) -> Subspace {
        let f = self.field;
        let mats: Vec<Cow<Mat>> = (0..self.n_vars).map(|i| self.action(i, d - 1)).collect();
        let refs: Vec<&Mat> = mats.iter().map(|c| c.as_ref()).collect();
        Mat::vstack(f, self.dim(d), &refs).row_space()
    }

    /// Number of minimal generators in each degree.
    pub fn top_dims(&self) -> BTreeMap<i32, usize> {
        self.degrees()
            .filter_map(|d| {
                let t = self.dim(d) - self.radical_at(d).dim();
                (t > 0).then_some((d, t))
            })
            .collect()
    }

    /// Generator degrees as a sorted multiset.
    pub fn generator_degrees(&self) -> Vec<i32> {
        self.top_dims().into_iter().flat_map(|(d, c)| std::iter::repeat_n(d, c)).collect()
    }

    pub fn socle_dims(&self) -> BTreeMap<i32, usize> {
        self.socle_radical().socle.into_iter().map(|(d, s)| (d, s.dim())).filter(|p| p.1 > 0).collect()
    }

    /// Quotient by `Σ_{i,j} im(X_i X_j)`, so that all length-two products vanish.
    pub fn square_truncate(&self) -> SquareZeroModule {
        self.square_truncate_map().0
    }

    /// [`GradedModule::square_truncate`] together with the quotient map.
    pub fn square_truncate_map(&self) -> (SquareZeroModule, ModuleMap) {
        let f = self.field;
        let mut parts = Vec::new();
        for d in self.degrees() {
            let mut rows = Vec::new();
            for i in 0..self.n_vars {
                let a = self.action(i, d - 2);
                for j in 0..self.n_vars {
                    rows.push(a.mul(&self.action(j, d - 1)));
                }
            }
            let refs: Vec<&Mat> = rows.iter().collect();
            parts.push(Mat::vstack(f, self.dim(d), &refs).row_space());
        }
        let fam = GradedSubspace { lo: self.min_deg, parts };
        let (q, proj) = quotient_module(self, &fam);
        (SquareZeroModule(q), proj)
    }

    /// Is every length-two product of action matrices zero?
    pub fn is_radical_square_zero(&self) -> bool {
        self.degrees().all(|d| {
            (0..self.n_vars).all(|i| {
                let a = self.action(i, d);
                (0..self.n_vars).all(|j| a.mul(&self.action(j, d + 1)).is_zero())
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SquareZero { i: usize, d: i32 },
    Anticommute { i: usize, j: usize, d: i32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SquareZero { i, d } => {
                write!(f, "square-zero violated: x_{i}·x_{i} ≠ 0 from degree {d}")
            }
            Violation::Anticommute { i, j, d } => {
                write!(f, "anticommutation violated: x_{i}x_{j} + x_{j}x_{i} ≠ 0 from degree {d}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SocleRadical {
    pub socle: BTreeMap<i32, Subspace>,
    pub radical: BTreeMap<i32, Subspace>,
    pub top_dims: BTreeMap<i32, usize>,
}

/// A module on which every product of two linear forms acts as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareZeroModule(pub GradedModule);

impl SquareZeroModule {
    pub fn new(m: GradedModule) -> Result<Self> {
        if m.is_radical_square_zero() {
            Ok(SquareZeroModule(m))
        } else {
            Err(Error::InvalidModule("radical square is nonzero".into()))
        }
    }
    pub fn module(&self) -> &GradedModule {
        &self.0
    }
}

/// A degree-preserving linear map between graded modules, stored per degree of
/// the source as `dim src_d × dim tgt_d` blocks (row-vector convention).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    field: Fp,
    lo: i32,
    blocks: Vec<Mat>,
}

impl ModuleMap {
    pub fn from_fn(src: &GradedModule, tgt: &GradedModule, mut block: impl FnMut(i32) -> Mat) -> Self {
        let blocks = src
            .degrees()
            .map(|d| {
                let b = block(d);
                assert_eq!((b.rows(), b.cols()), (src.dim(d), tgt.dim(d)), "block shape at {d}");
                b
            })
            .collect();
        ModuleMap { field: src.field, lo: src.min_deg, blocks }
    }

    pub fn zero(src: &GradedModule, tgt: &GradedModule) -> Self {
        ModuleMap::from_fn(src, tgt, |d| Mat::zero(src.field, src.dim(d), tgt.dim(d)))
    }

    pub fn identity(m: &GradedModule) -> Self {
        ModuleMap::from_fn(m, m, |d| Mat::identity(m.field, m.dim(d)))
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    /// Block at degree `d`; `rows`/`cols` give the shape used outside the stored range.
    pub fn block(&self, d: i32, rows: usize, cols: usize) -> Cow<'_, Mat> {
        let k = d - self.lo;
        if k >= 0 && (k as usize) < self.blocks.len() {
            Cow::Borrowed(&self.blocks[k as usize])
        } else {
            Cow::Owned(Mat::zero(self.field, rows, cols))
        }
    }

    pub fn block_for(&self, src: &GradedModule, tgt: &GradedModule, d: i32) -> Cow<'_, Mat> {
        self.block(d, src.dim(d), tgt.dim(d))
    }

    pub fn apply(&self, v: &[u32], d: i32, tgt_dim: usize) -> Vec<u32> {
        self.block(d, v.len(), tgt_dim).apply_row(v)
    }

    /// Does the map commute with every `x_i`?
    pub fn is_homomorphism(&self, src: &GradedModule, tgt: &GradedModule) -> bool {
        src.degrees().all(|d| {
            let fd = self.block_for(src, tgt, d);
            let fd1 = self.block_for(src, tgt, d + 1);
            (0..src.n_vars).all(|i| src.action(i, d).mul(&fd1) == fd.mul(&tgt.action(i, d)))
        })
    }

    /// `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &ModuleMap, a: &GradedModule, b: &GradedModule, c: &GradedModule) -> ModuleMap {
        ModuleMap::from_fn(a, c, |d| self.block_for(a, b, d).mul(&other.block_for(b, c, d)))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    /// Every block square and invertible.
    pub fn is_isomorphism(&self, src: &GradedModule, tgt: &GradedModule) -> bool {
        src.dims_map() == tgt.dims_map()
            && src.degrees().all(|d| {
                let b = self.block_for(src, tgt, d);
                b.rows() == b.cols() && b.rank() == b.rows()
            })
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.lo, other.lo);
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleMap { field: self.field, lo: self.lo, blocks }
    }

    pub fn scale(&self, s: u32) -> ModuleMap {
        ModuleMap { field: self.field, lo: self.lo, blocks: self.blocks.iter().map(|b| b.scale(s)).collect() }
    }

    /// The same linear data viewed as a map `src(i) → tgt(i)`.
    pub fn shift(&self, i: i32) -> ModuleMap {
        ModuleMap { field: self.field, lo: self.lo - i, blocks: self.blocks.clone() }
    }

    /// Dual map `tgt* → src*`.
    pub fn dual(&self, src: &GradedModule, tgt: &GradedModule) -> ModuleMap {
        let (ds, dt) = (src.dual(), tgt.dual());
        ModuleMap::from_fn(&dt, &ds, |e| self.block_for(src, tgt, -e).transpose())
    }

    /// Image as a graded subspace of `tgt`.
    pub fn image(&self, src: &GradedModule, tgt: &GradedModule) -> GradedSubspace {
        GradedSubspace::from_fn(tgt, |d| self.block_for(src, tgt, d).row_space())
    }

    /// Kernel as a graded subspace of `src`.
    pub fn kernel(&self, src: &GradedModule, tgt: &GradedModule) -> GradedSubspace {
        GradedSubspace::from_fn(src, |d| self.block_for(src, tgt, d).left_kernel())
    }
}

/// A family of subspaces `U_d ⊆ M_d`, aligned with the degrees of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    lo: i32,
    parts: Vec<Subspace>,
}

impl GradedSubspace {
    pub fn from_fn(m: &GradedModule, mut part: impl FnMut(i32) -> Subspace) -> Self {
        GradedSubspace { lo: m.min_deg, parts: m.degrees().map(&mut part).collect() }
    }

    pub fn zero(m: &GradedModule) -> Self {
        Self::from_fn(m, |d| Subspace::zero(m.field, m.dim(d)))
    }

    pub fn full(m: &GradedModule) -> Self {
        Self::from_fn(m, |d| Subspace::full(m.field, m.dim(d)))
    }

    pub fn get(&self, d: i32) -> Option<&Subspace> {
        let k = d - self.lo;
        if k < 0 {
            None
        } else {
            self.parts.get(k as usize)
        }
    }

    /// Part at degree `d`, or the zero subspace of `M_d`.
    pub fn at(&self, m: &GradedModule, d: i32) -> Cow<'_, Subspace> {
        match self.get(d) {
            Some(s) => Cow::Borrowed(s),
            None => Cow::Owned(Subspace::zero(m.field, m.dim(d))),
        }
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.parts.iter().enumerate().filter(|(_, s)| s.dim() > 0).map(|(k, s)| (self.lo + k as i32, s.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(Subspace::dim).sum()
    }

    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        assert_eq!(self.lo, other.lo);
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a.sum(b).unwrap()).collect();
        GradedSubspace { lo: self.lo, parts }
    }

    pub fn intersection(&self, other: &GradedSubspace) -> GradedSubspace {
        assert_eq!(self.lo, other.lo);
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a.intersection(b).unwrap()).collect();
        GradedSubspace { lo: self.lo, parts }
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.lo == other.lo && self.parts.iter().zip(&other.parts).all(|(a, b)| a.is_subspace_of(b))
    }

    /// `U · J`: degree `d` part is `Σ_i U_{d-1} x_i`.
    pub fn times_radical(&self, m: &GradedModule) -> GradedSubspace {
        let f = m.field;
        GradedSubspace::from_fn(m, |d| {
            let Some(prev) = self.get(d - 1) else {
                return Subspace::zero(f, m.dim(d));
            };
            let imgs: Vec<Mat> = (0..m.n_vars).map(|i| prev.basis().mul(&m.action(i, d - 1))).collect();
            let refs: Vec<&Mat> = imgs.iter().collect();
            Mat::vstack(f, m.dim(d), &refs).row_space()
        })
    }

    /// Is the family closed under every `x_i`?
    pub fn is_submodule(&self, m: &GradedModule) -> bool {
        self.times_radical(m).is_subspace_of(self)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Subspace::is_zero)
    }
}

/// The `R`-submodule generated by homogeneous vectors `(degree, v)`.
pub fn submodule_generated(m: &GradedModule, gens: &[(i32, Vec<u32>)]) -> GradedSubspace {
    let f = m.field;
    let mut parts: Vec<Subspace> = Vec::with_capacity(m.dims.len());
    for d in m.degrees() {
        let mut rows: Vec<Vec<u32>> = gens.iter().filter(|(g, _)| *g == d).map(|(_, v)| v.clone()).collect();
        if let Some(prev) = parts.last() {
            for i in 0..m.n_vars {
                let img = prev.basis().mul(&m.action(i, d - 1));
                rows.extend(img.row_vecs());
            }
        }
        parts.push(Subspace::span(f, m.dim(d), &rows));
    }
    GradedSubspace { lo: m.min_deg, parts }
}

/// Submodule on an action-stable family, with its inclusion.
pub fn sub_module(m: &GradedModule, fam: &GradedSubspace) -> (GradedModule, ModuleMap) {
    let f = m.field;
    let part = |d: i32| fam.at(m, d).into_owned();
    let dims: Vec<usize> = m.degrees().map(|d| part(d).dim()).collect();
    let sub = GradedModule::from_fn(f, m.n_vars, m.min_deg, dims, |i, d| {
        let src = part(d);
        let tgt = part(d + 1);
        let img = src.basis().mul(&m.action(i, d));
        img.select_cols(tgt.pivots())
    });
    let incl = ModuleMap::from_fn(&sub, m, |d| part(d).basis().clone());
    (sub, incl)
}

/// Quotient by an action-stable family, with its projection.
pub fn quotient_module(m: &GradedModule, fam: &GradedSubspace) -> (GradedModule, ModuleMap) {
    let f = m.field;
    let part = |d: i32| fam.at(m, d).into_owned();
    let dims: Vec<usize> = m.degrees().map(|d| m.dim(d) - part(d).dim()).collect();
    let reduce_to_quot = |d: i32, rows: &Mat| -> Mat {
        let s = part(d);
        let comp = s.complement_indices();
        let reduced: Vec<Vec<u32>> = (0..rows.rows()).map(|r| s.reduce(rows.row(r))).collect();
        Mat::from_row_vecs(f, m.dim(d), &reduced).select_cols(&comp)
    };
    let quot = GradedModule::from_fn(f, m.n_vars, m.min_deg, dims, |i, d| {
        let comp = part(d).complement_indices();
        let lifted = m.action(i, d).select_rows(&comp);
        reduce_to_quot(d + 1, &lifted)
    });
    let proj = ModuleMap::from_fn(m, &quot, |d| reduce_to_quot(d, &Mat::identity(f, m.dim(d))));
    (quot, proj)
}

/// Result of [`sub_quotient`].
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub sub: GradedModule,
    pub incl: ModuleMap,
    pub quot: GradedModule,
    pub proj: ModuleMap,
}

/// Submodule generated by the given homogeneous vectors, and the quotient by it.
pub fn sub_quotient(m: &GradedModule, generators: &[(i32, Vec<u32>)]) -> SubQuotient {
    let fam = submodule_generated(m, generators);
    let (sub, incl) = sub_module(m, &fam);
    let (quot, proj) = quotient_module(m, &fam);
    SubQuotient { sub, incl, quot, proj }
}

/// Direct sum with inclusions and projections, summands stacked in order.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: GradedModule,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum_many(parts: &[&GradedModule]) -> Result<DirectSum> {
    let first = parts.first().ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
    for p in parts {
        first.check_compatible(p)?;
    }
    let f = first.field;
    let lo = parts.iter().filter_map(|p| p.degree_range()).map(|r| r.0).min().unwrap_or(0);
    let hi = parts.iter().filter_map(|p| p.degree_range()).map(|r| r.1).max().unwrap_or(-1);
    let dims: Vec<usize> = (lo..=hi).map(|d| parts.iter().map(|p| p.dim(d)).sum()).collect();
    let module = GradedModule::from_fn(f, first.n_vars, lo, dims, |i, d| {
        let blocks: Vec<Cow<Mat>> = parts.iter().map(|p| p.action(i, d)).collect();
        let refs: Vec<&Mat> = blocks.iter().map(|b| b.as_ref()).collect();
        Mat::block_diag(f, &refs)
    });
    let offset = |k: usize, d: i32| -> usize { parts[..k].iter().map(|p| p.dim(d)).sum() };
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        inclusions.push(ModuleMap::from_fn(p, &module, |d| {
            let mut b = Mat::zero(f, p.dim(d), module.dim(d));
            let off = offset(k, d);
            for r in 0..p.dim(d) {
                b.set(r, off + r, 1);
            }
            b
        }));
        projections.push(ModuleMap::from_fn(&module, p, |d| {
            let mut b = Mat::zero(f, module.dim(d), p.dim(d));
            let off = offset(k, d);
            for r in 0..p.dim(d) {
                b.set(off + r, r, 1);
            }
            b
        }));
    }
    Ok(DirectSum { module, inclusions, projections })
}

pub fn direct_sum(a: &GradedModule, b: &GradedModule) -> Result<DirectSum> {
    direct_sum_many(&[a, b])
}

/// `m^k`.
pub fn power(m: &GradedModule, k: usize) -> GradedModule {
    if k == 0 {
        return GradedModule::zero(m.field, m.n_vars);
    }
    let parts: Vec<&GradedModule> = std::iter::repeat_n(m, k).collect();
    direct_sum_many(&parts).expect("compatible summands").module
}

/// Outcome of [`iso_probable`].
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    /// An explicit isomorphism, verified to commute and to be invertible.
    Iso(ModuleMap),
    /// A proven obstruction.
    NotIso(String),
    Undecided,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }
    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Iso(_) => "ISO",
            IsoVerdict::NotIso(_) => "NOT_ISO",
            IsoVerdict::Undecided => "UNDECIDED",
        }
    }
}

/// Randomized isomorphism test with certificate.
///
/// Invariants (graded dimensions, generator and socle degrees, Hom-space
/// dimensions) give `NotIso`; otherwise random elements of `Hom(a, b)` are
/// tried and the first invertible one is returned as a certificate.
pub fn iso_probable(a: &GradedModule, b: &GradedModule, seed: u64, trials: usize) -> Result<IsoVerdict> {
    a.check_compatible(b)?;
    if a.dims_map() != b.dims_map() {
        let d = a.degrees().chain(b.degrees()).find(|&d| a.dim(d) != b.dim(d)).unwrap_or(0);
        return Ok(IsoVerdict::NotIso(format!("dimension differs in degree {d}: {} vs {}", a.dim(d), b.dim(d))));
    }
    if a.is_zero() {
        return Ok(IsoVerdict::Iso(ModuleMap::identity(a)));
    }
    if a.top_dims() != b.top_dims() {
        return Ok(IsoVerdict::NotIso("generator degrees differ".into()));
    }
    if a.socle_dims() != b.socle_dims() {
        return Ok(IsoVerdict::NotIso("socle dimensions differ".into()));
    }
    let hab = hom_basis(a, b)?;
    let haa = hom_basis(a, a)?;
    if hab.dim() != haa.dim() {
        return Ok(IsoVerdict::NotIso(format!("dim Hom(a,b) = {} but dim End(a) = {}", hab.dim(), haa.dim())));
    }
    let hbb = hom_basis(b, b)?;
    if hbb.dim() != haa.dim() {
        return Ok(IsoVerdict::NotIso("endomorphism algebras differ in dimension".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = a.field.p();
    for _ in 0..trials {
        let coeffs: Vec<u32> = (0..hab.dim()).map(|_| rng.gen_range(0..p)).collect();
        let f = hab.combination(&coeffs);
        if f.is_isomorphism(a, b) && f.is_homomorphism(a, b) {
            return Ok(IsoVerdict::Iso(f));
        }
    }
    Ok(IsoVerdict::Undecided)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{free_module, linear_cx2_module, m_xi};

    fn fp() -> Fp {
        Fp::default_field()
    }

    #[test]
    fn validate_examples() {
        let f = fp();
        assert!(free_module(f, 3, &[0]).validate().is_valid());
        let bad = GradedModule::from_fn(f, 2, 0, vec![1, 1, 1], |_, _| Mat::identity(f, 1));
        let rep = bad.validate();
        assert!(rep.violations.contains(&Violation::Anticommute { i: 0, j: 1, d: 0 }));
        assert!(linear_cx2_module(f).validate().is_valid());
        assert!(GradedModule::zero(f, 3).validate().is_valid());
    }

    #[test]
    fn shift_examples() {
        let f = fp();
        let m = linear_cx2_module(f);
        assert_eq!(m.shift(0), m);
        assert_eq!(m.shift(3).shift(-3), m);
        let r1 = free_module(f, 3, &[0]).shift(1);
        assert_eq!(r1.socle_dims(), BTreeMap::from([(2, 1)]));
        let mx = m_xi(f, 3, &[1, 0, 0]).unwrap().shift(1);
        assert_eq!(mx.generator_degrees(), vec![-1]);
    }

    #[test]
    fn dual_examples() {
        let f = fp();
        let s = free_module(f, 3, &[0]).square_truncate().0.square_truncate();
        let s =
            quotient_module(
                &s.0,
                &GradedSubspace::from_fn(&s.0, |d| {
                    if d == 0 {
                        Subspace::zero(f, 1)
                    } else {
                        Subspace::full(f, s.0.dim(d))
                    }
                }),
            )
            .0;
        assert_eq!(s.dual(), s);
        let r = free_module(f, 3, &[0]);
        let dr = r.dual();
        assert_eq!(dr.dims_map(), r.shift(3).dims_map());
        let e = linear_cx2_module(f);
        assert_eq!(e.dual().dims_map(), BTreeMap::from([(-1, 2), (0, 2)]));
        assert_eq!(e.dual().dual(), e);
        assert!(e.dual().validate().is_valid());
    }

    #[test]
    fn sub_quotient_examples() {
        let f = fp();
        let r = free_module(f, 2, &[0]);
        let sq = sub_quotient(&r, &[(0, vec![1])]);
        assert_eq!(sq.sub, r);
        assert!(sq.quot.is_zero());

        // x0 in degree 1 of R(x0, x1): basis of R_1 is (x0, x1).
        let sq = sub_quotient(&r, &[(1, vec![1, 0])]);
        assert_eq!(sq.sub.dims_map(), BTreeMap::from([(1, 1), (2, 1)]));
        assert!(sq.incl.is_homomorphism(&sq.sub, &r));
        assert!(sq.proj.is_homomorphism(&r, &sq.quot));
        assert!(sq.incl.then(&sq.proj, &sq.sub, &r, &sq.quot).is_zero());
        let mx = m_xi(f, 2, &[1, 0]).unwrap().shift(-1);
        assert!(iso_probable(&sq.sub, &mx, 1, 8).unwrap().is_iso());
        for d in r.degrees() {
            assert_eq!(sq.sub.dim(d) + sq.quot.dim(d), r.dim(d));
        }
    }

    #[test]
    fn socle_radical_examples() {
        let f = fp();
        let r = free_module(f, 3, &[0]);
        let sr = r.socle_radical();
        assert_eq!(sr.top_dims, BTreeMap::from([(0, 1)]));
        assert_eq!(r.socle_dims(), BTreeMap::from([(3, 1)]));
        let mx = m_xi(f, 3, &[1, 0, 0]).unwrap();
        assert_eq!(mx.top_dims(), BTreeMap::from([(0, 1)]));
        let ss = GradedModule::from_fn(f, 3, 0, vec![2, 1], |_, _| Mat::zero(f, 2, 1));
        let sr = ss.socle_radical();
        assert!(sr.radical.values().all(Subspace::is_zero));
        assert_eq!(ss.socle_dims(), BTreeMap::from([(0, 2), (1, 1)]));
    }

    #[test]
    fn square_truncate_examples() {
        let f = fp();
        let r = free_module(f, 3, &[0]);
        assert_eq!(r.square_truncate().0.dims_map(), BTreeMap::from([(0, 1), (1, 3)]));
        let mx = m_xi(f, 3, &[1, 0, 0]).unwrap();
        let t = mx.square_truncate();
        assert_eq!(t.0.dims_map(), BTreeMap::from([(0, 1), (1, 2)]));
        assert!(t.0.is_radical_square_zero());
        assert_eq!(t.0.square_truncate(), t);
    }

    #[test]
    fn direct_sum_examples() {
        let f = fp();
        let mx = m_xi(f, 3, &[1, 0, 0]).unwrap();
        let z = GradedModule::zero(f, 3);
        assert_eq!(direct_sum(&mx, &z).unwrap().module, mx);
        let s = direct_sum(&mx, &mx.shift(1)).unwrap();
        for d in -1..4 {
            assert_eq!(s.module.dim(d), mx.dim(d) + mx.dim(d + 1));
        }
        assert!(s.projections[0].is_homomorphism(&s.module, &mx));
        assert!(s.projections[1].is_homomorphism(&s.module, &mx.shift(1)));
        assert!(s.inclusions[0].is_homomorphism(&mx, &s.module));
        assert!(s.inclusions[1].is_homomorphism(&mx.shift(1), &s.module));
        let mm = direct_sum(&mx, &mx).unwrap().module;
        assert_eq!(hom_basis(&mm, &mm).unwrap().dim(), 4);
    }

    #[test]
    fn iso_examples() {
        let f = fp();
        let mx = m_xi(f, 3, &[1, 0, 0]).unwrap();
        assert!(iso_probable(&mx, &mx, 0, 4).unwrap().is_iso());
        assert!(matches!(iso_probable(&mx, &mx.shift(1), 0, 4).unwrap(), IsoVerdict::NotIso(_)));
        let other = m_xi(f, 3, &[0, 1, 0]).unwrap();
        assert!(matches!(iso_probable(&mx, &other, 0, 4).unwrap(), IsoVerdict::NotIso(_)));
        let scaled = m_xi(f, 3, &[5, 0, 0]).unwrap();
        assert!(iso_probable(&mx, &scaled, 0, 4).unwrap().is_iso());
    }

    #[test]
    fn iso_verdict_is_symmetric() {
        let f = fp();
        let mx = m_xi(f, 3, &[1, 0, 0]).unwrap();
        let p2 = crate::constructions::build_p_inductive(f, 3, 2, 0).unwrap();
        let mods = [
            mx.clone(),
            mx.shift(1),
            crate::homology::syzygy(&mx, 1).shift(1),
            m_xi(f, 3, &[0, 1, 1]).unwrap(),
            p2.clone(),
            crate::homology::syzygy(&p2, 1).shift(1),
        ];
        for a in &mods {
            for b in &mods {
                let ab = iso_probable(a, b, 5, 8).unwrap();
                let ba = iso_probable(b, a, 5, 8).unwrap();
                assert_eq!(ab.label(), ba.label());
            }
        }
    }

    #[test]
    fn transport_moves_annihilator() {
        let f = fp();
        let m0 = m_xi(f, 3, &[1, 0, 0]).unwrap();
        // Substitution x_i -> Σ g[i][k] x_k turns R/<x0> into R/<ξ> with ξ = row 0 of g^{-1}.
        let g = Mat::from_rows_i64(f, &[vec![1, 0, 0], vec![2, 1, 0], vec![0, 3, 1]]);
        let t = m0.transport(&g).unwrap();
        assert!(t.validate().is_valid());
        let ginv = g.inverse().unwrap();
        let xi = ginv.row(0).to_vec();
        let target = m_xi(f, 3, &xi).unwrap();
        assert!(iso_probable(&t, &target, 3, 8).unwrap().is_iso());
    }
}
