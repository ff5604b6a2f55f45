//! Projective covers, syzygies, minimal resolutions and the invariants read
//! off them: Betti tables, linearity, relative extensions, regular
//! sequences and complexity.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{free_module, FreeLayout};
use crate::error::{Error, Result};
use crate::gmod::{quotient_module, sub_module, sub_quotient, GradedModule, GradedSubspace, ModuleMap};
use crate::linalg::{Mat, Subspace};

/// Minimal free cover `P → M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub module: GradedModule,
    pub epi: ModuleMap,
    /// Minimal generators of `M` as `(degree, vector)`, in the order of the
    /// free generators of `P`.
    pub generators: Vec<(i32, Vec<u32>)>,
}

/// Minimal generators: in each degree, unit vectors on the columns where the
/// radical has no pivot.
pub fn minimal_generators(m: &GradedModule) -> Vec<(i32, Vec<u32>)> {
    let mut gens = Vec::new();
    for d in m.degrees() {
        let rad = m.radical_at(d);
        for c in rad.complement_indices() {
            let mut v = vec![0; m.dim(d)];
            v[c] = 1;
            gens.push((d, v));
        }
    }
    gens
}

pub fn projective_cover(m: &GradedModule) -> ProjectiveCover {
    let f = m.field();
    let generators = minimal_generators(m);
    let degs: Vec<i32> = generators.iter().map(|g| g.0).collect();
    let module = free_module(f, m.n_vars(), &degs);
    let layout = FreeLayout::new(m.n_vars(), &degs);
    let epi = ModuleMap::from_fn(&module, m, |d| {
        let rows: Vec<Vec<u32>> = layout
            .entries(d)
            .into_iter()
            .map(|(g, mono)| {
                let (gd, v) = &generators[g];
                m.act_monomial(v, *gd, mono)
            })
            .collect();
        Mat::from_row_vecs(f, m.dim(d), &rows)
    });
    ProjectiveCover { module, epi, generators }
}

/// `0 → ΩM → P → M → 0`.
#[derive(Clone, Debug)]
pub struct SyzygyData {
    pub cover: ProjectiveCover,
    pub omega: GradedModule,
    pub incl: ModuleMap,
}

pub fn syzygy_data(m: &GradedModule) -> SyzygyData {
    let cover = projective_cover(m);
    let ker = cover.epi.kernel(&cover.module, m);
    let (omega, incl) = sub_module(&cover.module, &ker);
    SyzygyData { cover, omega, incl }
}

/// `Ω^k M`.
pub fn syzygy(m: &GradedModule, k: usize) -> GradedModule {
    let mut cur = m.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = syzygy_data(&cur).omega;
    }
    cur
}

/// `Ω^{-k} M`, computed as the dual of `Ω^k` of the dual.
pub fn cosyzygy(m: &GradedModule, k: usize) -> GradedModule {
    syzygy(&m.dual(), k).dual()
}

/// Injective envelope `ι: M → I(M)`, the dual of the projective cover of `M*`.
pub fn injective_envelope(m: &GradedModule) -> (GradedModule, ModuleMap) {
    let dm = m.dual();
    let cover = projective_cover(&dm);
    let env = cover.module.dual();
    let iota = cover.epi.dual(&cover.module, &dm);
    (env, iota)
}

/// A minimal presentation: cover plus the minimal generators of its kernel,
/// written in the coordinates of the cover.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub cover: ProjectiveCover,
    pub relations: Vec<(i32, Vec<u32>)>,
}

pub fn presentation(m: &GradedModule) -> Presentation {
    let syz = syzygy_data(m);
    let relations = minimal_generators(&syz.omega)
        .into_iter()
        .map(|(d, v)| {
            let w = syz.incl.apply(&v, d, syz.cover.module.dim(d));
            (d, w)
        })
        .collect();
    Presentation { cover: syz.cover, relations }
}

/// Generator degrees of the terms `F^0, …, F^depth` of a minimal resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub rows: Vec<Vec<i32>>,
}

impl BettiTable {
    pub fn depth(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// `β_{i,j}`: number of generators of `F^i` in degree `j`.
    pub fn graded(&self) -> BTreeMap<(usize, i32), usize> {
        let mut out = BTreeMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            for &d in row {
                *out.entry((i, d)).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Macaulay-style layout: column `i`, row `j - i`, with a `total:` line.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let graded = self.graded();
        let cols = self.rows.len();
        let betti = self.betti();
        let width = betti.iter().map(|b| b.to_string().len()).max().unwrap_or(1).max(cols.to_string().len());
        let rows: Vec<i32> = {
            let mut r: Vec<i32> = graded.keys().map(|(i, d)| d - *i as i32).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let label_w = rows.iter().map(|r| format!("{r}:").len()).max().unwrap_or(0).max("total:".len());
        write!(f, "{:>label_w$}", "")?;
        for i in 0..cols {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>label_w$}", "total:")?;
        for b in &betti {
            write!(f, " {:>width$}", b)?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{:>label_w$}", format!("{r}:"))?;
            for i in 0..cols {
                match graded.get(&(i, r + i as i32)) {
                    Some(c) => write!(f, " {:>width$}", c)?,
                    None => write!(f, " {:>width$}", ".")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn minimal_resolution(m: &GradedModule, depth: usize) -> BettiTable {
    let mut rows = Vec::with_capacity(depth + 1);
    let mut cur = m.clone();
    for i in 0..=depth {
        let row = cur.generator_degrees();
        rows.push(row);
        if i < depth {
            cur = if cur.is_zero() { cur } else { syzygy_data(&cur).omega };
        }
    }
    BettiTable { rows }
}

/// Every `F^i` generated in degree exactly `i`, for `i ≤ depth`.
pub fn is_linear(m: &GradedModule, depth: usize) -> bool {
    is_linear_from(m, depth, 0)
}

/// Linear up to a shift: `F^i` generated in degree `j + i` for the single
/// generator degree `j` of `m`.
pub fn is_shifted_linear(m: &GradedModule, depth: usize) -> bool {
    match m.degree_range() {
        None => true,
        Some((lo, _)) => is_linear_from(m, depth, lo),
    }
}

fn is_linear_from(m: &GradedModule, depth: usize, j: i32) -> bool {
    minimal_resolution(m, depth).rows.iter().enumerate().all(|(i, row)| row.iter().all(|&d| d == j + i as i32))
}

/// `L = ⟨M_{i₀}⟩` for the lowest degree `i₀`, and `M/L`.
#[derive(Clone, Debug)]
pub struct LowestStep {
    pub sub: GradedModule,
    pub incl: ModuleMap,
    pub quot: GradedModule,
    pub proj: ModuleMap,
    pub family: GradedSubspace,
}

pub fn lowest_step(m: &GradedModule) -> Result<LowestStep> {
    let (lo, _) = m.degree_range().ok_or_else(|| Error::InvalidArgument("zero module".into()))?;
    let gens: Vec<(i32, Vec<u32>)> =
        Mat::identity(m.field(), m.dim(lo)).row_vecs().into_iter().map(|v| (lo, v)).collect();
    let family = crate::gmod::submodule_generated(m, &gens);
    let sq = sub_quotient(m, &gens);
    Ok(LowestStep { sub: sq.sub, incl: sq.incl, quot: sq.quot, proj: sq.proj, family })
}

/// `MJ^k ∩ L = LJ^k` for every `k` (until both sides vanish).
pub fn is_relative_family(m: &GradedModule, l: &GradedSubspace) -> bool {
    let mut mj = GradedSubspace::full(m);
    let mut lj = l.clone();
    for _ in 0..=m.degrees().len() + 1 {
        if mj.intersection(l) != lj {
            return false;
        }
        mj = mj.times_radical(m);
        lj = lj.times_radical(m);
    }
    true
}

/// Relativity of the image of an injective map `L → M`.
pub fn is_relative_sub(m: &GradedModule, l: &GradedModule, incl: &ModuleMap) -> bool {
    is_relative_family(m, &incl.image(l, m))
}

/// Filtration criterion: the lowest layer is a shifted linear module, sits
/// relatively inside `m`, and the quotient is again weakly Koszul.
pub fn is_weakly_koszul(m: &GradedModule, depth: usize) -> bool {
    let mut cur = m.clone();
    loop {
        if cur.is_zero() || is_shifted_linear(&cur, depth) {
            return true;
        }
        let step = lowest_step(&cur).expect("nonzero");
        if !is_shifted_linear(&step.sub, depth) || !is_relative_family(&cur, &step.family) {
            return false;
        }
        cur = step.quot;
    }
}

/// `ker(·v) = im(·v)` in every degree.
pub fn regular_element_test(m: &GradedModule, v: &[u32]) -> Result<bool> {
    if v.len() != m.n_vars() {
        return Err(Error::DimensionMismatch("linear form length".into()));
    }
    if v.iter().all(|&c| c % m.field().p() == 0) {
        return Err(Error::ZeroForm);
    }
    Ok(m.degrees().all(|d| {
        let ker = m.form_matrix(v, d).left_kernel().dim();
        let im = m.form_matrix(v, d - 1).rank();
        ker == im
    }))
}

/// `m / m·v`.
pub fn quotient_by_form(m: &GradedModule, v: &[u32]) -> GradedModule {
    let fam = GradedSubspace::from_fn(m, |d| m.form_matrix(v, d - 1).row_space());
    quotient_module(m, &fam).0
}

pub const DEFAULT_DEPTH: usize = 12;
pub const REGSEQ_TRIALS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityEstimate {
    /// Growth degree of the Betti numbers plus one; `None` if undetermined.
    pub cx_betti: Option<usize>,
    pub cx_regseq: usize,
    pub depth_used: usize,
    pub regular_sequence: Vec<Vec<u32>>,
    pub betti: Vec<usize>,
}

/// Greedy random regular sequence on successive quotients.
pub fn regular_sequence(m: &GradedModule, seed: u64, trials: usize) -> Vec<Vec<u32>> {
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = m.clone();
    let mut seq = Vec::new();
    while !cur.is_zero() && seq.len() < m.n_vars() {
        let mut found = None;
        for _ in 0..trials {
            let v: Vec<u32> = (0..m.n_vars()).map(|_| rng.gen_range(0..f.p())).collect();
            if v.iter().all(|&c| c == 0) {
                continue;
            }
            if regular_element_test(&cur, &v).unwrap() {
                found = Some(v);
                break;
            }
        }
        match found {
            Some(v) => {
                cur = quotient_by_form(&cur, &v);
                seq.push(v);
            }
            None => break,
        }
    }
    seq
}

/// Growth class of `β` on the window `[depth/2, depth]` by finite differences.
pub fn betti_growth(betti: &[usize]) -> Option<usize> {
    let depth = betti.len().checked_sub(1)?;
    let window: Vec<i64> = betti[depth / 2..].iter().map(|&b| b as i64).collect();
    if window.iter().all(|&b| b == 0) {
        return Some(0);
    }
    let mut diffs = window;
    // A degree-k polynomial needs k+2 points for its (k+1)-st difference to be
    // observed at all; require one more to see it vanish twice.
    for k in 1.. {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        if diffs.len() < 2 {
            return None;
        }
        if diffs.iter().all(|&x| x == 0) {
            return Some(k);
        }
    }
    unreachable!()
}

pub fn complexity(m: &GradedModule, depth: usize, seed: u64) -> ComplexityEstimate {
    let regular_sequence = if m.is_zero() { Vec::new() } else { regular_sequence(m, seed, REGSEQ_TRIALS) };
    let cx_regseq = if m.is_zero() { 0 } else { m.n_vars() - regular_sequence.len() };
    let betti = minimal_resolution(m, depth).betti();
    ComplexityEstimate { cx_betti: betti_growth(&betti), cx_regseq, depth_used: depth, regular_sequence, betti }
}

/// `τM = Ω²M(n+1)`.
pub fn ar_translate(m: &GradedModule) -> Result<GradedModule> {
    if m.is_zero() || syzygy(m, 1).is_zero() {
        return Err(Error::FreeModule);
    }
    Ok(syzygy(m, 2).shift(m.n_vars() as i32))
}

/// Ω of a relative inclusion `L ⊆ B`: lift to covers and return
/// `(ΩB, image of ΩL inside ΩB)`.
pub fn syzygy_of_inclusion(b: &GradedModule, l: &GradedModule, incl: &ModuleMap) -> (GradedModule, GradedSubspace) {
    let f = b.field();
    let sb = syzygy_data(b);
    let sl = syzygy_data(l);
    // Lift P(L) → L → B through P(B) → B, generator by generator.
    let lifted_gens: Vec<(i32, Vec<u32>)> = sl
        .cover
        .generators
        .iter()
        .map(|(d, v)| {
            let img = incl.apply(v, *d, b.dim(*d));
            let e = sb.cover.epi.block_for(&sb.cover.module, b, *d);
            let pre = e.solve_left(&img).unwrap().expect("epi is surjective");
            (*d, pre)
        })
        .collect();
    let pl = &sl.cover.module;
    let pb = &sb.cover.module;
    let layout = FreeLayout::new(b.n_vars(), &sl.cover.generators.iter().map(|g| g.0).collect::<Vec<_>>());
    let lift = ModuleMap::from_fn(pl, pb, |d| {
        let rows: Vec<Vec<u32>> = layout
            .entries(d)
            .into_iter()
            .map(|(g, mono)| pb.act_monomial(&lifted_gens[g].1, lifted_gens[g].0, mono))
            .collect();
        Mat::from_row_vecs(f, pb.dim(d), &rows)
    });
    let omega_l_in_pb = sl.incl.then(&lift, &sl.omega, pl, pb).image(&sl.omega, pb);
    // Coordinates inside ΩB.
    let fam = GradedSubspace::from_fn(&sb.omega, |d| {
        let basis = omega_l_in_pb.at(pb, d);
        let inc = sb.incl.block_for(&sb.omega, pb, d);
        let rows: Vec<Vec<u32>> =
            basis.basis().row_vecs().iter().map(|w| inc.solve_left(w).unwrap().expect("ΩL lands in ΩB")).collect();
        Subspace::span(f, sb.omega.dim(d), &rows)
    });
    (sb.omega, fam)
}
