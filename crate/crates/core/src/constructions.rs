//! Named modules and constructions: free modules, `M_ξ` and `M_U`, tensor
//! products, realized extensions, universal extensions and the modules `P^(d)`.

use std::collections::HashMap;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::{wedge, AlgebraBasis, ExtMonomial};
use crate::gmod::{
    direct_sum, direct_sum_many, quotient_module, sub_quotient, GradedModule, GradedSubspace, ModuleMap,
};
use crate::homalg::{hom_space, section};
use crate::homology::{cosyzygy, lowest_step, presentation, syzygy, syzygy_data, SyzygyData};
use crate::linalg::{Fp, Mat, Subspace};

/// Basis bookkeeping for `⊕_g R(-d_g)`: generators in the given order, and
/// inside each generator the monomials in degree-then-lex order.
#[derive(Clone, Debug)]
pub struct FreeLayout {
    gens: Vec<i32>,
    basis: AlgebraBasis,
}

impl FreeLayout {
    pub fn new(n_vars: usize, gens: &[i32]) -> Self {
        FreeLayout { gens: gens.to_vec(), basis: AlgebraBasis::new(n_vars) }
    }

    pub fn generators(&self) -> &[i32] {
        &self.gens
    }

    pub fn basis(&self) -> &AlgebraBasis {
        &self.basis
    }

    /// Start of generator `g`'s block inside degree `d`.
    pub fn offset(&self, g: usize, d: i32) -> usize {
        self.gens[..g].iter().map(|&e| self.basis.degree((d - e) as i64).len()).sum()
    }

    /// Coordinate of `g·μ` inside its degree.
    pub fn index(&self, g: usize, mono: ExtMonomial) -> usize {
        let d = self.gens[g] + mono.degree() as i32;
        self.offset(g, d) + self.basis.position(mono)
    }

    pub fn dim(&self, d: i32) -> usize {
        self.gens.iter().map(|&e| self.basis.degree((d - e) as i64).len()).sum()
    }

    /// `(generator, monomial)` pairs spanning degree `d`, in coordinate order.
    pub fn entries(&self, d: i32) -> Vec<(usize, ExtMonomial)> {
        self.gens
            .iter()
            .enumerate()
            .flat_map(|(g, &e)| self.basis.degree((d - e) as i64).iter().map(move |&m| (g, m)))
            .collect()
    }
}

/// `⊕_g R(-d_g)`.
pub fn free_module(field: Fp, n_vars: usize, gens: &[i32]) -> GradedModule {
    if gens.is_empty() {
        return GradedModule::zero(field, n_vars);
    }
    let layout = FreeLayout::new(n_vars, gens);
    let lo = *gens.iter().min().unwrap();
    let hi = *gens.iter().max().unwrap() + n_vars as i32;
    let dims: Vec<usize> = (lo..=hi).map(|d| layout.dim(d)).collect();
    GradedModule::from_fn(field, n_vars, lo, dims, |i, d| {
        let mut m = Mat::zero(field, layout.dim(d), layout.dim(d + 1));
        for (r, (g, mono)) in layout.entries(d).into_iter().enumerate() {
            if let Some((s, prod)) = wedge(mono, ExtMonomial::var(n_vars, i)) {
                m.set(r, layout.index(g, prod), field.from_i64(s as i64));
            }
        }
        m
    })
}

/// The simple module `S = R/J` in degree 0.
pub fn simple(field: Fp, n_vars: usize) -> GradedModule {
    GradedModule::from_fn(field, n_vars, 0, vec![1], |_, _| unreachable!())
}

/// `R/⟨U⟩` for linearly independent forms `U`.
pub fn m_u(field: Fp, n_vars: usize, forms: &[Vec<u32>]) -> Result<GradedModule> {
    for v in forms {
        if v.len() != n_vars {
            return Err(Error::DimensionMismatch(format!(
                "linear form has {} coefficients, expected {}",
                v.len(),
                n_vars
            )));
        }
        if v.iter().all(|&c| c == 0) {
            return Err(Error::ZeroForm);
        }
    }
    let reduced: Vec<Vec<u32>> = forms.iter().map(|v| v.iter().map(|&c| c % field.p()).collect()).collect();
    if Mat::from_row_vecs(field, n_vars, &reduced).rank() != forms.len() {
        return Err(Error::DependentForms);
    }
    let r = free_module(field, n_vars, &[0]);
    // R_1 has basis x_0, …, x_n, so a form is its own coordinate vector.
    let gens: Vec<(i32, Vec<u32>)> = reduced.into_iter().map(|v| (1, v)).collect();
    Ok(sub_quotient(&r, &gens).quot)
}

/// `M_ξ = R/⟨ξ⟩`.
pub fn m_xi(field: Fp, n_vars: usize, xi: &[u32]) -> Result<GradedModule> {
    m_u(field, n_vars, &[xi.to_vec()])
}

/// `e_1, e_2` in degree 0 and `f_1, f_2` in degree 1 over `R(x, y, z)` with
/// `e_i z = f_i`, `e_1 x = e_2 y = 0`, `e_1 y = f_2`, `e_2 x = f_1`.
/// A linear module of complexity two.
pub fn linear_cx2_module(field: Fp) -> GradedModule {
    let mats = [
        Mat::from_rows_i64(field, &[vec![0, 0], vec![1, 0]]),
        Mat::from_rows_i64(field, &[vec![0, 1], vec![0, 0]]),
        Mat::identity(field, 2),
    ];
    GradedModule::from_fn(field, 3, 0, vec![2, 2], |i, _| mats[i].clone())
}

/// `R/J²`: generated in degree 0 with Loewy length two.
pub fn radical_square_quotient(field: Fp, n_vars: usize) -> GradedModule {
    free_module(field, n_vars, &[0]).square_truncate().0
}

/// Unit linear form `x_i`.
pub fn unit_form(n_vars: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n_vars];
    v[i] = 1;
    v
}

/// `m ⊗_k n` with `(a⊗b)x = (-1)^{deg b} (ax ⊗ b) + a ⊗ bx`.
///
/// In degree `k` the basis lists, for `i` ascending, the pairs
/// `(a ∈ m_i, b ∈ n_{k-i})` with `a` major.
pub fn tensor(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    if m.field() != n.field() {
        return Err(Error::ModulusMismatch(m.field().p(), n.field().p()));
    }
    if m.n_vars() != n.n_vars() {
        return Err(Error::VariableMismatch(m.n_vars(), n.n_vars()));
    }
    let f = m.field();
    let (Some((ml, mh)), Some((nl, nh))) = (m.degree_range(), n.degree_range()) else {
        return Ok(GradedModule::zero(f, m.n_vars()));
    };
    let offset = |k: i32, i: i32| -> usize { (ml..i).map(|t| m.dim(t) * n.dim(k - t)).sum() };
    let dim = |k: i32| offset(k, mh + 1);
    let dims: Vec<usize> = (ml + nl..=mh + nh).map(dim).collect();
    Ok(GradedModule::from_fn(f, m.n_vars(), ml + nl, dims, |x, k| {
        let mut out = Mat::zero(f, dim(k), dim(k + 1));
        for i in ml..=mh {
            let (da, db) = (m.dim(i), n.dim(k - i));
            if da == 0 || db == 0 {
                continue;
            }
            let sign_neg = (k - i).rem_euclid(2) == 1;
            let am = m.action(x, i);
            let bm = n.action(x, k - i);
            let (o_src, o_a, o_b) = (offset(k, i), offset(k + 1, i + 1), offset(k + 1, i));
            let db_next = n.dim(k - i + 1);
            for a in 0..da {
                for b in 0..db {
                    let row = o_src + a * db + b;
                    // (a x) ⊗ b lands in block i+1 of degree k+1.
                    for a2 in 0..m.dim(i + 1) {
                        let c = am.get(a, a2);
                        if c != 0 {
                            let c = if sign_neg { f.neg(c) } else { c };
                            out.add_at(row, o_a + a2 * db + b, c);
                        }
                    }
                    // a ⊗ (b x) lands in block i of degree k+1.
                    for b2 in 0..db_next {
                        let c = bm.get(b, b2);
                        if c != 0 {
                            out.add_at(row, o_b + a * db_next + b2, c);
                        }
                    }
                }
            }
        }
        out
    }))
}

/// A short exact sequence `0 → sub → middle → quot → 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub sub: GradedModule,
    pub middle: GradedModule,
    pub quot: GradedModule,
    pub incl: ModuleMap,
    pub proj: ModuleMap,
}

impl Extension {
    /// Both maps commute with the action, compose to zero, and dimensions add.
    pub fn is_exact(&self) -> bool {
        let (a, b, c) = (&self.sub, &self.middle, &self.quot);
        self.incl.is_homomorphism(a, b)
            && self.proj.is_homomorphism(b, c)
            && self.incl.then(&self.proj, a, b, c).is_zero()
            && b.degrees().chain(a.degrees()).chain(c.degrees()).all(|d| {
                b.dim(d) == a.dim(d) + c.dim(d)
                    && self.incl.block_for(a, b, d).rank() == a.dim(d)
                    && self.proj.block_for(b, c, d).rank() == c.dim(d)
            })
    }
}

/// An element of `Ext¹(X, M)` as a map `ΩX → M`.
#[derive(Clone, Debug)]
pub struct ExtClass {
    pub x: GradedModule,
    pub syz: SyzygyData,
    pub target: GradedModule,
    pub cocycle: ModuleMap,
}

/// Pushout of `0 → ΩX → P → X → 0` along the cocycle:
/// `E = (M ⊕ P) / {(φ(z), -ι(z))}`.
pub fn realize_ext(c: &ExtClass) -> Result<Extension> {
    let f = c.x.field();
    let m = &c.target;
    let p = &c.syz.cover.module;
    let omega = &c.syz.omega;
    if !c.cocycle.is_homomorphism(omega, m) {
        return Err(Error::InvalidArgument("cocycle is not a module map".into()));
    }
    let sum = direct_sum(m, p)?;
    let psi = ModuleMap::from_fn(omega, &sum.module, |d| {
        let phi = c.cocycle.block_for(omega, m, d);
        let iota = c.syz.incl.block_for(omega, p, d);
        Mat::hstack(f, omega.dim(d), &[&phi, &iota.scale(f.neg(1))])
    });
    let image = psi.image(omega, &sum.module);
    let (middle, q) = quotient_module(&sum.module, &image);
    let incl = sum.inclusions[0].then(&q, m, &sum.module, &middle);
    let to_x = sum.projections[1].then(&c.syz.cover.epi, &sum.module, p, &c.x);
    let proj = ModuleMap::from_fn(&middle, &c.x, |d| {
        section(&q.block_for(&sum.module, &middle, d)).mul(&to_x.block_for(&sum.module, &c.x, d))
    });
    Ok(Extension { sub: m.clone(), middle, quot: c.x.clone(), incl, proj })
}

/// Universal extension `0 → M^a → E → X → 0` with `a = dim Ext¹(X, M)`.
#[derive(Clone, Debug)]
pub struct UniversalExtension {
    pub ext: Extension,
    pub a: usize,
    /// The chosen basis of `Ext¹(X, M)`, as maps `ΩX → M`.
    pub classes: Vec<ModuleMap>,
}

pub fn universal_extension(x: &GradedModule, m: &GradedModule) -> Result<UniversalExtension> {
    universal_extension_seeded(x, m, None)
}

/// As [`universal_extension`]; a seed recombines the Ext basis by a random
/// invertible matrix, which changes the middle term only up to isomorphism.
pub fn universal_extension_seeded(x: &GradedModule, m: &GradedModule, seed: Option<u64>) -> Result<UniversalExtension> {
    let f = x.field();
    let syz = syzygy_data(x);
    let h = hom_space(&syz.omega, m)?;
    let mut classes: Vec<ModuleMap> =
        h.ptriv().complement_indices().into_iter().map(|k| h.basis()[k].clone()).collect();
    let a = classes.len();
    if let (Some(seed), true) = (seed, a > 1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = loop {
            let data: Vec<u32> = (0..a * a).map(|_| rng.gen_range(0..f.p())).collect();
            let g = Mat::from_vec(f, a, a, data)?;
            if g.rank() == a {
                break g;
            }
        };
        classes = (0..a)
            .map(|i| (0..a).fold(ModuleMap::zero(&syz.omega, m), |acc, j| acc.add(&classes[j].scale(g.get(i, j)))))
            .collect();
    }
    let parts: Vec<&GradedModule> = std::iter::repeat_n(m, a).collect();
    let target = if a == 0 { GradedModule::zero(f, x.n_vars()) } else { direct_sum_many(&parts)?.module };
    let cocycle = ModuleMap::from_fn(&syz.omega, &target, |d| {
        let blocks: Vec<Mat> = classes.iter().map(|c| c.block_for(&syz.omega, m, d).into_owned()).collect();
        let refs: Vec<&Mat> = blocks.iter().collect();
        Mat::hstack(f, syz.omega.dim(d), &refs)
    });
    let class = ExtClass { x: x.clone(), syz, target, cocycle };
    let ext = realize_ext(&class)?;
    Ok(UniversalExtension { ext, a, classes })
}

/// `P^(d)` as iterated universal extensions by `M = M_{x_0}`:
/// `P^(1) = M`, `P^(d+1)` the middle term of the universal sequence
/// `0 → M^a → P^(d+1) → P^(d) → 0`.
pub fn build_p_inductive(field: Fp, n_vars: usize, d: usize, seed: u64) -> Result<GradedModule> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let m = m_xi(field, n_vars, &unit_form(n_vars, 0))?;
    let mut p = m.clone();
    for step in 1..d {
        p = universal_extension_seeded(&p, &m, Some(seed.wrapping_add(step as u64)))?.ext.middle;
    }
    Ok(p)
}

/// `P^(d)` from generators `e_w` indexed by multisets `w` of size `< d` over
/// `{1..n}`, with `e_w x_0 = Σ_r e_{w+r} x_r` and `e_w x_0 = 0` when `|w| = d-1`.
#[derive(Clone, Debug)]
pub struct ExplicitP {
    pub module: GradedModule,
    /// The span of all `e_w a` with `|w| = d-1`.
    pub top_layer: GradedSubspace,
    pub words: Vec<Vec<usize>>,
}

pub fn build_p_explicit(field: Fp, n_vars: usize, d: usize) -> Result<ExplicitP> {
    if d == 0 || n_vars == 0 {
        return Err(Error::InvalidArgument("need d ≥ 1 and at least one variable".into()));
    }
    let n = n_vars - 1;
    let words: Vec<Vec<usize>> = (0..d).flat_map(|s| (1..=n).combinations_with_replacement(s)).collect();
    let word_idx: HashMap<Vec<usize>, usize> = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
    let small = AlgebraBasis::new(n);
    // a ∈ Λ(x_1..x_n) is stored on the full variable set with bit 0 clear.
    let lift = |m: ExtMonomial| ExtMonomial::from_mask(n_vars, m.mask() << 1);
    let pos = |a: ExtMonomial| small.position(ExtMonomial::from_mask(n, a.mask() >> 1));
    let width = |k: i32| small.degree(k as i64).len();
    let dims: Vec<usize> = (0..=n as i32).map(|k| words.len() * width(k)).collect();
    let module = GradedModule::from_fn(field, n_vars, 0, dims, |i, k| {
        let (w0, w1) = (width(k), width(k + 1));
        let mut mat = Mat::zero(field, words.len() * w0, words.len() * w1);
        for (wi, w) in words.iter().enumerate() {
            for &a0 in small.degree(k as i64) {
                let a = lift(a0);
                let row = wi * w0 + pos(a);
                if i > 0 {
                    if let Some((s, prod)) = wedge(a, ExtMonomial::var(n_vars, i)) {
                        mat.set(row, wi * w1 + pos(prod), field.from_i64(s as i64));
                    }
                } else if w.len() + 1 < d {
                    let sign_a = if k % 2 == 0 { 1 } else { -1 };
                    for r in 1..=n {
                        if let Some((s, prod)) = wedge(ExtMonomial::var(n_vars, r), a) {
                            let mut w2 = w.clone();
                            w2.push(r);
                            w2.sort_unstable();
                            let col = word_idx[&w2] * w1 + pos(prod);
                            mat.add_at(row, col, field.from_i64((sign_a * s) as i64));
                        }
                    }
                }
            }
        }
        mat
    });
    let top_layer = GradedSubspace::from_fn(&module, |k| {
        let w0 = width(k);
        let total = words.len() * w0;
        let rows: Vec<Vec<u32>> = words
            .iter()
            .enumerate()
            .filter(|(_, w)| w.len() + 1 == d)
            .flat_map(|(wi, _)| {
                (0..w0).map(move |t| {
                    let mut v = vec![0; total];
                    v[wi * w0 + t] = 1;
                    v
                })
            })
            .collect();
        Subspace::span(field, module.dim(k), &rows)
    });
    Ok(ExplicitP { module, top_layer, words })
}

/// The nonsplit sequence `0 → M_ξ(n-1) → X_ξ → M_ξ → 0`.
pub fn ar_sequence(field: Fp, n_vars: usize, xi: &[u32]) -> Result<Extension> {
    let m = m_xi(field, n_vars, xi)?;
    let sub = m.shift(n_vars as i32 - 2);
    let u = universal_extension(&m, &sub)?;
    if u.a != 1 {
        return Err(Error::InvalidArgument(format!("expected a one-dimensional Ext, got {}", u.a)));
    }
    Ok(u.ext)
}

/// `F_i(j)` over `R(x_0, x_1)`: `F_0 = S`, `F_i = Ω^i S(i)` and
/// `F_{-i} = Ω^{-i} S(-i)` for `i > 0`.
pub fn kronecker_f(field: Fp, i: i32, j: i32) -> GradedModule {
    let s = simple(field, 2);
    let f = match i {
        0 => s,
        i if i > 0 => syzygy(&s, i as usize).shift(i),
        i => cosyzygy(&s, (-i) as usize).shift(i),
    };
    f.shift(j)
}

/// One subquotient `M_ξ(shift)` of a complexity-one filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationFactor {
    /// Linear form scaled so that its first nonzero coefficient is 1.
    pub xi: Vec<u32>,
    pub shift: i32,
}

/// Filtration of a complexity-one module with subquotients `M_ξ(j)`, listed
/// from the bottom. Each linear layer from [`lowest_step`] is split into
/// copies of a single `M_ξ(j)`; the form `ξ` is read off the layer's linear
/// presentation.
pub fn filtration_cx1(m: &GradedModule, seed: u64) -> Result<Vec<FiltrationFactor>> {
    let mut out = Vec::new();
    let mut rest = m.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while !rest.is_zero() {
        let step = lowest_step(&rest)?;
        out.extend(split_linear_layer(&step.sub, &mut rng)?);
        rest = step.quot;
    }
    Ok(out)
}

fn split_linear_layer(layer: &GradedModule, rng: &mut ChaCha8Rng) -> Result<Vec<FiltrationFactor>> {
    let f = layer.field();
    let nv = layer.n_vars();
    let j = layer.degree_range().expect("nonzero layer").0;
    let pres = presentation(layer);
    let r = pres.cover.generators.len();
    if pres.relations.iter().any(|(d, _)| *d != j + 1) {
        return Err(Error::NotCx1("layer has nonlinear relations".into()));
    }
    if pres.relations.len() != r {
        return Err(Error::NotCx1(format!("layer has {} generators but {} relations", r, pres.relations.len())));
    }
    // Y_k[ρ][g] = coefficient of g·x_k in relation ρ.
    let y: Vec<Mat> = (0..nv)
        .map(|k| {
            let mut m = Mat::zero(f, r, r);
            for (row, (_, rho)) in pres.relations.iter().enumerate() {
                for g in 0..r {
                    m.set(row, g, rho[g * nv + k]);
                }
            }
            m
        })
        .collect();
    let mut xi = None;
    for _ in 0..32 {
        let a: Vec<u32> = (0..nv).map(|_| rng.gen_range(0..f.p())).collect();
        let mut ya = Mat::zero(f, r, r);
        for (k, yk) in y.iter().enumerate() {
            ya.axpy(a[k], yk);
        }
        if let Some(inv) = ya.inverse() {
            let v: Vec<u32> = y.iter().map(|yk| inv.mul(yk).trace()).collect();
            if v.iter().any(|&c| c != 0) {
                xi = Some(v);
                break;
            }
        }
    }
    let mut xi = xi.ok_or_else(|| Error::NotCx1("no linear form annihilates the layer".into()))?;
    let lead = *xi.iter().find(|&&c| c != 0).unwrap();
    let s = f.inv(lead);
    xi.iter_mut().for_each(|c| *c = f.mul(*c, s));

    let block = 1usize << (nv - 1);
    let mut out = Vec::new();
    let mut cur = layer.clone();
    while !cur.is_zero() {
        let e0 = cur.form_matrix(&xi, j).left_kernel();
        if e0.is_zero() {
            return Err(Error::NotCx1("form acts injectively on the generators".into()));
        }
        let gens: Vec<(i32, Vec<u32>)> = e0.basis().row_vecs().into_iter().map(|v| (j, v)).collect();
        let sq = sub_quotient(&cur, &gens);
        if sq.sub.total_dim() != e0.dim() * block {
            return Err(Error::NotCx1(format!(
                "piece of dimension {} is not {} copies of M_ξ",
                sq.sub.total_dim(),
                e0.dim()
            )));
        }
        for _ in 0..e0.dim() {
            out.push(FiltrationFactor { xi: xi.clone(), shift: -j });
        }
        cur = sq.quot;
    }
    Ok(out)
}

/// The map `Φ: Ext¹_R(V, E) → Ext¹_{R/J²}(V/VJ², E/EJ²)` sending an extension
/// to its truncation, measured by dimensions and rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationMap {
    pub ext_r: usize,
    pub ext_a: usize,
    pub rank: usize,
}

pub fn truncation_map(v: &GradedModule, e: &GradedModule) -> Result<TruncationMap> {
    let f = v.field();
    // Ext over R, one realized extension per basis class.
    let syz = syzygy_data(v);
    let h = hom_space(&syz.omega, e)?;
    let classes: Vec<ModuleMap> = h.ptriv().complement_indices().into_iter().map(|k| h.basis()[k].clone()).collect();

    // Square-zero presentation of V̄.
    let (vbar, qv) = v.square_truncate_map();
    let (ebar, qe) = e.square_truncate_map();
    let (vbar, ebar) = (vbar.0, ebar.0);
    let cover = crate::homology::projective_cover(&vbar);
    let (pbar, qp) = cover.module.square_truncate_map();
    let pbar = pbar.0;
    let epi = ModuleMap::from_fn(&pbar, &vbar, |d| {
        section(&qp.block_for(&cover.module, &pbar, d)).mul(&cover.epi.block_for(&cover.module, &vbar, d))
    });
    let (omega_a, incl_a) = crate::gmod::sub_module(&pbar, &epi.kernel(&pbar, &vbar));
    let h_omega = crate::homalg::hom_basis(&omega_a, &ebar)?;
    let h_p = crate::homalg::hom_basis(&pbar, &ebar)?;
    let mut rows: Vec<Vec<u32>> = h_p
        .basis()
        .iter()
        .map(|g| h_omega.coords(&incl_a.then(g, &omega_a, &pbar, &ebar)).expect("module map"))
        .collect();
    let trivial_rank = Mat::from_row_vecs(f, h_omega.dim(), &rows).rank();
    let ext_a = h_omega.dim() - trivial_rank;

    for phi in &classes {
        let ext = realize_ext(&ExtClass { x: v.clone(), syz: syz.clone(), target: e.clone(), cocycle: phi.clone() })?;
        let x = &ext.middle;
        let (xbar, qx) = x.square_truncate_map();
        let xbar = xbar.0;
        let to_x = ModuleMap::from_fn(&ebar, &xbar, |d| {
            section(&qe.block_for(e, &ebar, d)).mul(&ext.incl.then(&qx, e, x, &xbar).block_for(e, &xbar, d))
        });
        let to_v = ModuleMap::from_fn(&xbar, &vbar, |d| {
            section(&qx.block_for(x, &xbar, d)).mul(&ext.proj.then(&qv, x, v, &vbar).block_for(x, &vbar, d))
        });
        // Lift the generators of V̄ to X̄ and extend to P → X̄.
        let lifts: Vec<(i32, Vec<u32>)> = cover
            .generators
            .iter()
            .map(|(d, g)| {
                let pre = to_v.block_for(&xbar, &vbar, *d).solve_left(g).unwrap().expect("surjective");
                (*d, pre)
            })
            .collect();
        let layout = FreeLayout::new(v.n_vars(), &lifts.iter().map(|l| l.0).collect::<Vec<_>>());
        let p = &cover.module;
        let lift = ModuleMap::from_fn(p, &xbar, |d| {
            let rows: Vec<Vec<u32>> =
                layout.entries(d).into_iter().map(|(g, mu)| xbar.act_monomial(&lifts[g].1, lifts[g].0, mu)).collect();
            Mat::from_row_vecs(f, xbar.dim(d), &rows)
        });
        let lift_bar =
            ModuleMap::from_fn(&pbar, &xbar, |d| section(&qp.block_for(p, &pbar, d)).mul(&lift.block_for(p, &xbar, d)));
        let restricted = incl_a.then(&lift_bar, &omega_a, &pbar, &xbar);
        let cocycle = ModuleMap::from_fn(&omega_a, &ebar, |d| {
            let inj = to_x.block_for(&ebar, &xbar, d);
            let img = restricted.block_for(&omega_a, &xbar, d);
            let rows: Vec<Vec<u32>> =
                (0..img.rows()).map(|r| inj.solve_left(img.row(r)).unwrap().expect("lands in Ē")).collect();
            Mat::from_row_vecs(f, ebar.dim(d), &rows)
        });
        rows.push(h_omega.coords(&cocycle).expect("module map"));
    }
    let rank = Mat::from_row_vecs(f, h_omega.dim(), &rows).rank() - trivial_rank;
    Ok(TruncationMap { ext_r: classes.len(), ext_a, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::binomial;
    use crate::gmod::iso_probable;
    use crate::homalg::{end_algebra, hom_basis};
    use std::collections::BTreeMap;

    fn fp() -> Fp {
        Fp::default_field()
    }

    #[test]
    fn free_module_dims() {
        let f = fp();
        assert_eq!(free_module(f, 2, &[0]).dims_map(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        let r3 = free_module(f, 3, &[0]);
        assert_eq!(r3.dims_map(), BTreeMap::from([(0, 1), (1, 3), (2, 3), (3, 1)]));
        assert_eq!(r3.total_dim(), 8);
        let two = free_module(f, 2, &[0, 1]);
        assert_eq!(two.dims_map(), BTreeMap::from([(0, 1), (1, 3), (2, 3), (3, 1)]));
        assert!(two.validate().is_valid());
        assert!(free_module(f, 4, &[2, -1, 0]).validate().is_valid());
    }

    #[test]
    fn m_xi_and_m_u() {
        let f = fp();
        let m = m_xi(f, 3, &[1, 0, 0]).unwrap();
        assert_eq!(m.dims_map(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        let k = m_xi(f, 2, &[3, 7]).unwrap();
        assert_eq!(k.dims_map(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(k.socle_dims(), BTreeMap::from([(1, 1)]));
        let a = m_xi(f, 3, &[1, 2, 3]).unwrap();
        let b = m_xi(f, 3, &[2, 4, 6]).unwrap();
        assert!(iso_probable(&a, &b, 0, 4).unwrap().is_iso());

        let full: Vec<Vec<u32>> = (0..3).map(|i| unit_form(3, i)).collect();
        assert_eq!(m_u(f, 3, &full).unwrap(), simple(f, 3));
        let two = m_u(f, 3, &full[..2]).unwrap();
        assert_eq!(two.total_dim(), 2);
        assert_eq!(m_xi(f, 3, &[0, 0, 0]), Err(Error::ZeroForm));
        assert_eq!(m_u(f, 2, &[vec![1, 1], vec![2, 2]]), Err(Error::DependentForms));
    }

    #[test]
    fn tensor_examples() {
        let f = fp();
        let m = m_xi(f, 3, &[1, 0, 0]).unwrap();
        let t = tensor(&m, &m).unwrap();
        assert_eq!(t.total_dim(), 16);
        assert!(t.validate().is_valid());
        assert!(tensor(&m, &GradedModule::zero(f, 3)).unwrap().is_zero());
        for i in -2..=2 {
            let s = simple(f, 3).shift(-i);
            let lhs = tensor(&m, &s).unwrap();
            assert!(iso_probable(&lhs, &m.shift(-i), 1, 8).unwrap().is_iso(), "i={i}");
        }
        let e = linear_cx2_module(f);
        let r = free_module(f, 3, &[0, 1]);
        assert!(tensor(&e, &r).unwrap().validate().is_valid());
        assert!(tensor(&r, &e).unwrap().validate().is_valid());
    }

    #[test]
    fn extension_examples() {
        let f = fp();
        let nv = 3;
        let m = m_xi(f, nv, &[1, 0, 0]).unwrap();
        // Ext¹(M(1), M) is spanned by the free extension 0 → M → R(1) → M(1) → 0.
        let u = universal_extension(&m.shift(1), &m).unwrap();
        assert_eq!(u.a, 1);
        assert!(u.ext.is_exact());
        assert!(iso_probable(&u.ext.middle, &free_module(f, nv, &[-1]), 0, 8).unwrap().is_iso());

        // Zero cocycle splits.
        let syz = syzygy_data(&m);
        let zero = ModuleMap::zero(&syz.omega, &m);
        let split = realize_ext(&ExtClass { x: m.clone(), syz, target: m.clone(), cocycle: zero }).unwrap();
        let mm = direct_sum(&m, &m).unwrap().module;
        assert!(iso_probable(&split.middle, &mm, 0, 8).unwrap().is_iso());

        let p2 = universal_extension(&m, &m).unwrap();
        assert_eq!(p2.a, 2);
        assert_eq!(p2.ext.middle.total_dim(), 12);
        assert!(p2.ext.is_exact());
    }

    #[test]
    fn p_constructions_agree() {
        let f = fp();
        for (nv, dmax) in [(2, 4), (3, 4), (4, 3)] {
            let n = nv - 1;
            for d in 1..=dmax {
                let e = build_p_explicit(f, nv, d).unwrap();
                assert!(e.module.validate().is_valid());
                let expect: usize = (0..d).map(|s| binomial((n + s - 1) as i64, s as i64)).sum::<usize>() << n;
                assert_eq!(e.module.total_dim(), expect);
                let ind = build_p_inductive(f, nv, d, 7).unwrap();
                assert!(iso_probable(&e.module, &ind, 3, 8).unwrap().is_iso(), "nv={nv} d={d}");
                if d > 1 {
                    assert!(e.top_layer.is_submodule(&e.module));
                    let q = quotient_module(&e.module, &e.top_layer).0;
                    let lower = build_p_explicit(f, nv, d - 1).unwrap().module;
                    assert!(iso_probable(&q, &lower, 3, 8).unwrap().is_iso());
                }
            }
        }
    }

    #[test]
    fn explicit_p2_presentation() {
        let f = fp();
        let e = build_p_explicit(f, 3, 2).unwrap();
        assert_eq!(e.words, vec![vec![], vec![1], vec![2]]);
        // e x_0 = e_1 x_1 + e_2 x_2; e_s x_0 = 0.
        let m = &e.module;
        let ex0 = m.act(&[1, 0, 0], 0, 0);
        let rhs = {
            let a = m.act(&[0, 1, 0], 1, 0);
            let b = m.act(&[0, 0, 1], 2, 0);
            a.iter().zip(&b).map(|(x, y)| f.add(*x, *y)).collect::<Vec<_>>()
        };
        assert_eq!(ex0, rhs);
        assert!(m.act(&[0, 1, 0], 0, 0).iter().all(|&c| c == 0));
        // Free over Λ(x_1, …, x_n) once x_0 is forgotten.
        let restricted = GradedModule::from_fn(f, 2, 0, vec![3, 6, 3], |i, d| m.action(i + 1, d).into_owned());
        assert_eq!(restricted.socle_dims().values().sum::<usize>(), 3);
    }

    #[test]
    fn ar_sequence_middle() {
        let f = fp();
        for nv in [2, 3, 4] {
            let x = ar_sequence(f, nv, &unit_form(nv, 0)).unwrap();
            assert!(x.is_exact());
            assert_eq!(x.middle.total_dim(), 1 << nv);
            assert!(end_algebra(&x.middle).unwrap().is_local());
        }
    }

    #[test]
    fn kronecker_family() {
        let f = fp();
        assert_eq!(kronecker_f(f, 0, 0), simple(f, 2));
        let f1 = kronecker_f(f, 1, 0);
        assert_eq!(f1.top_dims(), BTreeMap::from([(0, 2)]));
        // Ω^{-1} S(-1) is cyclic with two-dimensional socle.
        let fm1 = kronecker_f(f, -1, 0);
        assert_eq!(fm1.top_dims(), BTreeMap::from([(-1, 1)]));
        assert_eq!(fm1.socle_dims(), BTreeMap::from([(0, 2)]));
        assert_eq!(hom_basis(&f1, &f1).unwrap().dim(), 1);
    }

    #[test]
    fn filtration_examples() {
        let f = fp();
        let nv = 3;
        let x0 = unit_form(nv, 0);
        let m = m_xi(f, nv, &x0).unwrap();
        assert_eq!(filtration_cx1(&m, 0).unwrap(), vec![FiltrationFactor { xi: x0.clone(), shift: 0 }]);
        let p2 = build_p_explicit(f, nv, 2).unwrap().module;
        let fl = filtration_cx1(&p2, 0).unwrap();
        assert_eq!(fl.len(), nv);
        assert!(fl.iter().all(|t| t.xi == x0 && t.shift == 0));
        let xx = ar_sequence(f, nv, &x0).unwrap().middle;
        let fl = filtration_cx1(&xx, 0).unwrap();
        assert_eq!(
            fl,
            vec![
                FiltrationFactor { xi: x0.clone(), shift: nv as i32 - 2 },
                FiltrationFactor { xi: x0.clone(), shift: 0 }
            ]
        );
        let other = m_xi(f, nv, &[0, 2, 4]).unwrap().shift(3);
        assert_eq!(filtration_cx1(&other, 1).unwrap(), vec![FiltrationFactor { xi: vec![0, 1, 2], shift: 3 }]);
        assert!(matches!(filtration_cx1(&simple(f, nv), 0), Err(Error::NotCx1(_))));
    }
}
