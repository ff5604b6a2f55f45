//! Degree-zero Hom spaces, maps factoring through projectives, stable Hom and
//! Ext, endomorphism algebras and their radicals.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::ExtMonomial;
use crate::gmod::{GradedModule, ModuleMap};
use crate::homology::{injective_envelope, presentation, projective_cover, syzygy, syzygy_data};
use crate::linalg::{Fp, Mat, Subspace};

/// Right inverse `S` of a surjective block `E` (`S · E = I`).
pub fn section(e: &Mat) -> Mat {
    let f = e.field();
    let rows: Vec<Vec<u32>> = (0..e.cols())
        .map(|j| {
            let mut t = vec![0; e.cols()];
            t[j] = 1;
            e.solve_left(&t).unwrap().expect("block is surjective")
        })
        .collect();
    Mat::from_row_vecs(f, e.rows(), &rows)
}

/// A basis of `Hom_R(M, N)_0`.
///
/// Maps are parametrized by the images of the minimal generators of `M`;
/// the admissible images are those killing every minimal relation.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: GradedModule,
    target: GradedModule,
    generators: Vec<(i32, Vec<u32>)>,
    solutions: Subspace,
    basis: Vec<ModuleMap>,
    ptriv: Option<Subspace>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn source(&self) -> &GradedModule {
        &self.source
    }
    pub fn target(&self) -> &GradedModule {
        &self.target
    }
    pub fn basis(&self) -> &[ModuleMap] {
        &self.basis
    }

    /// Maps factoring through a projective, in basis coordinates.
    pub fn ptriv(&self) -> &Subspace {
        self.ptriv.as_ref().expect("projectively trivial part not computed; use hom_space")
    }

    pub fn stable_dim(&self) -> usize {
        self.dim() - self.ptriv().dim()
    }

    pub fn combination(&self, coeffs: &[u32]) -> ModuleMap {
        assert_eq!(coeffs.len(), self.dim());
        let mut acc = ModuleMap::zero(&self.source, &self.target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                acc = acc.add(&b.scale(*c));
            }
        }
        acc
    }

    /// Coordinates of a module map `source → target` in this basis.
    pub fn coords(&self, map: &ModuleMap) -> Option<Vec<u32>> {
        let y: Vec<u32> = self.generators.iter().flat_map(|(d, v)| map.apply(v, *d, self.target.dim(*d))).collect();
        self.solutions.coords(&y)
    }
}

/// Basis of `Hom(m, n)` without the projectively trivial part.
pub fn hom_basis(m: &GradedModule, n: &GradedModule) -> Result<HomSpace> {
    if m.field() != n.field() {
        return Err(Error::ModulusMismatch(m.field().p(), n.field().p()));
    }
    if m.n_vars() != n.n_vars() {
        return Err(Error::VariableMismatch(m.n_vars(), n.n_vars()));
    }
    let f = m.field();
    let pres = presentation(m);
    let gens = &pres.cover.generators;
    let layout = crate::constructions::FreeLayout::new(m.n_vars(), &gens.iter().map(|g| g.0).collect::<Vec<_>>());
    let offsets: Vec<usize> = gens
        .iter()
        .scan(0, |acc, (d, _)| {
            let o = *acc;
            *acc += n.dim(*d);
            Some(o)
        })
        .collect();
    let unknowns: usize = gens.iter().map(|(d, _)| n.dim(*d)).sum();

    let mut mono_cache: HashMap<(i32, u32), Mat> = HashMap::new();
    let mut mono = |d: i32, mu: ExtMonomial| -> Mat {
        mono_cache.entry((d, mu.mask())).or_insert_with(|| n.monomial_matrix(d, mu)).clone()
    };

    // Each relation ρ ∈ P_e gives a block of columns: y ↦ Σ c_{g,μ} y_g μ.
    let mut blocks = Vec::new();
    for (e, rho) in &pres.relations {
        let mut c = Mat::zero(f, unknowns, n.dim(*e));
        for (pos, (g, mu)) in layout.entries(*e).into_iter().enumerate() {
            let coef = rho[pos];
            if coef == 0 || n.dim(gens[g].0) == 0 {
                continue;
            }
            let mm = mono(gens[g].0, mu);
            for r in 0..mm.rows() {
                for col in 0..mm.cols() {
                    let v = mm.get(r, col);
                    if v != 0 {
                        c.add_at(offsets[g] + r, col, f.mul(coef, v));
                    }
                }
            }
        }
        blocks.push(c);
    }
    let refs: Vec<&Mat> = blocks.iter().collect();
    let system = Mat::hstack(f, unknowns, &refs);
    let solutions = system.left_kernel();

    let sections: HashMap<i32, Mat> =
        m.degrees().map(|d| (d, section(&pres.cover.epi.block_for(&pres.cover.module, m, d)))).collect();
    let p = &pres.cover.module;
    let basis = solutions
        .basis()
        .row_vecs()
        .iter()
        .map(|y| {
            let lifted = ModuleMap::from_fn(p, n, |d| {
                let rows: Vec<Vec<u32>> = layout
                    .entries(d)
                    .into_iter()
                    .map(|(g, mu)| {
                        let gd = gens[g].0;
                        let yg = &y[offsets[g]..offsets[g] + n.dim(gd)];
                        mono(gd, mu).apply_row(yg)
                    })
                    .collect();
                Mat::from_row_vecs(f, n.dim(d), &rows)
            });
            ModuleMap::from_fn(m, n, |d| sections[&d].mul(&lifted.block_for(p, n, d)))
        })
        .collect();
    Ok(HomSpace { source: m.clone(), target: n.clone(), generators: gens.clone(), solutions, basis, ptriv: None })
}

/// `Hom(m, n)` together with the subspace of maps factoring through a projective.
pub fn hom_space(m: &GradedModule, n: &GradedModule) -> Result<HomSpace> {
    let mut h = hom_basis(m, n)?;
    h.ptriv = Some(ptriv_via_envelope(&h)?);
    Ok(h)
}

/// `{g ∘ ι : g ∈ Hom(I(m), n)}` for the injective envelope `ι: m → I(m)`.
fn ptriv_via_envelope(h: &HomSpace) -> Result<Subspace> {
    let (m, n) = (&h.source, &h.target);
    let (env, iota) = injective_envelope(m);
    let through = hom_basis(&env, n)?;
    let coords: Vec<Vec<u32>> =
        through.basis.iter().map(|g| h.coords(&iota.then(g, m, &env, n)).expect("composite is a module map")).collect();
    Ok(Subspace::span(m.field(), h.dim(), &coords))
}

/// Maps factoring through a projective, via the injective envelope of `m`.
pub fn factor_through_projectives(m: &GradedModule, n: &GradedModule) -> Result<Subspace> {
    Ok(hom_space(m, n)?.ptriv().clone())
}

/// The same subspace computed as `{π ∘ h : h ∈ Hom(m, P(n))}` for the
/// projective cover `π: P(n) → n`.
pub fn factor_through_cover(m: &GradedModule, n: &GradedModule) -> Result<Subspace> {
    let h = hom_basis(m, n)?;
    let cover = projective_cover(n);
    let into = hom_basis(m, &cover.module)?;
    let coords: Vec<Vec<u32>> = into
        .basis
        .iter()
        .map(|g| h.coords(&g.then(&cover.epi, m, &cover.module, n)).expect("composite is a module map"))
        .collect();
    Ok(Subspace::span(m.field(), h.dim(), &coords))
}

pub fn stable_hom_dim(m: &GradedModule, n: &GradedModule) -> Result<usize> {
    Ok(hom_space(m, n)?.stable_dim())
}

/// `dim Ext^k(m, n) = dim Hom_stable(Ω^k m, n)`.
pub fn ext_dim(m: &GradedModule, n: &GradedModule, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidArgument("Ext degree must be at least 1".into()));
    }
    stable_hom_dim(&syzygy(m, k), n)
}

/// `dim Ext¹(m, n)` from `0 → Hom(m,n) → Hom(P,n) → Hom(Ωm,n) → Ext¹ → 0`.
pub fn ext1_by_counting(m: &GradedModule, n: &GradedModule) -> Result<usize> {
    let syz = syzygy_data(m);
    let a = hom_basis(&syz.omega, n)?.dim();
    let b = hom_basis(&syz.cover.module, n)?.dim();
    let c = hom_basis(m, n)?.dim();
    Ok(a + c - b)
}

/// A finite-dimensional algebra given by structure constants.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteAlgebra {
    #[serde(skip)]
    field: Fp,
    dim: usize,
    /// `mult[a][b]` = coordinates of `e_a · e_b`.
    mult: Vec<Vec<Vec<u32>>>,
    one: Vec<u32>,
}

impl FiniteAlgebra {
    pub fn new(field: Fp, mult: Vec<Vec<Vec<u32>>>, one: Vec<u32>) -> Result<Self> {
        let dim = one.len();
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimensionMismatch("structure constants".into()));
        }
        Ok(FiniteAlgebra { field, dim, mult, one })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn one(&self) -> &[u32] {
        &self.one
    }

    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let s = f.mul(xa, yb);
                for (o, &c) in out.iter_mut().zip(&self.mult[a][b]) {
                    *o = f.add(*o, f.mul(s, c));
                }
            }
        }
        out
    }

    fn unit(&self, a: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[a] = 1;
        v
    }

    pub fn is_associative(&self) -> bool {
        (0..self.dim).all(|a| {
            (0..self.dim).all(|b| {
                (0..self.dim).all(|c| {
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    self.multiply(&self.multiply(&ea, &eb), &ec) == self.multiply(&ea, &self.multiply(&eb, &ec))
                })
            })
        })
    }

    pub fn has_unit(&self) -> bool {
        (0..self.dim).all(|a| {
            let e = self.unit(a);
            self.multiply(&self.one, &e) == e && self.multiply(&e, &self.one) == e
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|a| (a..self.dim).all(|b| self.mult[a][b] == self.mult[b][a]))
    }

    /// Matrix of `y ↦ x·y`, rows indexed by basis vectors `y`.
    fn left_mult(&self, x: &[u32]) -> Mat {
        let rows: Vec<Vec<u32>> = (0..self.dim).map(|b| self.multiply(x, &self.unit(b))).collect();
        Mat::from_row_vecs(self.field, self.dim, &rows)
    }

    /// Jacobson radical as the radical of `(x, y) ↦ tr(L_{xy})`, valid when
    /// `dim < p`.
    pub fn radical(&self) -> Result<Subspace> {
        let p = self.field.p();
        if self.dim as u64 >= p as u64 {
            return Err(Error::DimTooLarge { dim: self.dim, p });
        }
        let f = self.field;
        let traces: Vec<u32> = (0..self.dim).map(|c| self.left_mult(&self.unit(c)).trace()).collect();
        let mut gram = Mat::zero(f, self.dim, self.dim);
        for a in 0..self.dim {
            for b in 0..self.dim {
                let v = self.mult[a][b].iter().zip(&traces).fold(0, |acc, (&c, &t)| f.add(acc, f.mul(c, t)));
                gram.set(a, b, v);
            }
        }
        Ok(gram.left_kernel())
    }

    /// Product subspace `U·W`.
    pub fn product(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for x in u.basis().row_vecs() {
            for y in w.basis().row_vecs() {
                rows.push(self.multiply(&x, &y));
            }
        }
        Subspace::span(self.field, self.dim, &rows)
    }

    /// `rad^0 ⊇ rad^1 ⊇ … ⊇ 0`, ending with the zero subspace.
    pub fn radical_filtration(&self) -> Result<Vec<Subspace>> {
        let rad = self.radical()?;
        let mut out = vec![Subspace::full(self.field, self.dim)];
        let mut cur = rad.clone();
        loop {
            let done = cur.is_zero();
            if out.last().map(|l| l == &cur).unwrap_or(false) {
                // Not nilpotent: should not happen for a genuine radical.
                return Err(Error::InvalidArgument("radical is not nilpotent".into()));
            }
            out.push(cur.clone());
            if done {
                return Ok(out);
            }
            cur = self.product(&cur, &rad);
        }
    }

    pub fn is_local(&self) -> bool {
        self.radical().map(|r| r.dim() + 1 == self.dim).unwrap_or(false)
    }
}

/// `End(m)` with `e_a · e_b = e_a ∘ e_b` (apply `e_b` first).
pub fn end_algebra(m: &GradedModule) -> Result<FiniteAlgebra> {
    let h = hom_basis(m, m)?;
    let b = h.basis();
    let mult = b
        .iter()
        .map(|fa| b.iter().map(|fb| h.coords(&fb.then(fa, m, m, m)).expect("endomorphism")).collect())
        .collect();
    let one = h.coords(&ModuleMap::identity(m)).expect("identity");
    FiniteAlgebra::new(m.field(), mult, one)
}

/// Local endomorphism ring.
pub fn is_indecomposable(m: &GradedModule) -> Result<bool> {
    let a = end_algebra(m)?;
    Ok(a.radical()?.dim() + 1 == a.dim())
}

/// Does `a` look like `k[t_1..t_n]/(t_1..t_n)^d`: commutative, with the
/// dimensions of all radical powers and of `rad/rad²` as for that algebra?
pub fn truncated_poly_fingerprint(a: &FiniteAlgebra, n: usize, d: usize) -> Result<bool> {
    use crate::exterior::binomial;
    let layer = |j: usize| binomial((n + j) as i64 - 1, j as i64);
    let filt = a.radical_filtration()?;
    if !a.is_commutative() || a.dim() != (0..d).map(layer).sum::<usize>() {
        return Ok(false);
    }
    for s in 0..d {
        let expect: usize = (s..d).map(layer).sum();
        if filt.get(s).map(Subspace::dim).unwrap_or(0) != expect {
            return Ok(false);
        }
    }
    let rd = filt.get(d).map(Subspace::dim).unwrap_or(0);
    let r1 = filt.get(1).map(Subspace::dim).unwrap_or(0);
    let r2 = filt.get(2).map(Subspace::dim).unwrap_or(0);
    Ok(rd == 0 && (d < 2 || r1 - r2 == n))
}

/// `dim Ext¹` over `R/J²`, from a minimal square-zero presentation
/// `0 → Ω → P̄ → mbar → 0` as the cokernel of `Hom(P̄, nbar) → Hom(Ω, nbar)`.
pub fn ext1_square_zero(mbar: &GradedModule, nbar: &GradedModule) -> Result<usize> {
    Ok(square_zero_ext1_data(mbar, nbar)?.0)
}

/// Cokernel dimension together with the alternating-sum count
/// `dim Hom(Ω,N) - dim Hom(P̄,N) + dim Hom(M,N)`.
pub fn square_zero_ext1_data(mbar: &GradedModule, nbar: &GradedModule) -> Result<(usize, usize)> {
    for m in [mbar, nbar] {
        if !m.is_radical_square_zero() {
            return Err(Error::InvalidModule("radical square is nonzero".into()));
        }
    }
    let cover = projective_cover(mbar);
    let (pbar, q) = cover.module.square_truncate_map();
    let pbar = pbar.0;
    let epi = ModuleMap::from_fn(&pbar, mbar, |d| {
        section(&q.block_for(&cover.module, &pbar, d)).mul(&cover.epi.block_for(&cover.module, mbar, d))
    });
    let ker = epi.kernel(&pbar, mbar);
    let (omega, incl) = crate::gmod::sub_module(&pbar, &ker);
    let h_omega = hom_basis(&omega, nbar)?;
    let h_p = hom_basis(&pbar, nbar)?;
    let restricted: Vec<Vec<u32>> =
        h_p.basis().iter().map(|g| h_omega.coords(&incl.then(g, &omega, &pbar, nbar)).expect("module map")).collect();
    let rank = Mat::from_row_vecs(mbar.field(), h_omega.dim(), &restricted).rank();
    let counted = h_omega.dim() + hom_basis(mbar, nbar)?.dim() - h_p.dim();
    Ok((h_omega.dim() - rank, counted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_p_explicit, free_module, kronecker_f, m_xi, simple, unit_form};
    use crate::gmod::direct_sum;

    fn fp() -> Fp {
        Fp::default_field()
    }

    #[test]
    fn hom_examples() {
        let f = fp();
        let a = m_xi(f, 3, &[1, 0, 0]).unwrap();
        let b = m_xi(f, 3, &[0, 1, 0]).unwrap();
        assert_eq!(hom_basis(&a, &b).unwrap().dim(), 0);
        assert_eq!(hom_basis(&a, &a).unwrap().dim(), 1);
        for j in [1, 2, -3, -4] {
            assert_eq!(hom_basis(&a.shift(j), &a).unwrap().dim(), 0, "j={j}");
        }
        let h = hom_basis(&a, &a.shift(1)).unwrap();
        assert!(h.basis().iter().all(|g| g.is_homomorphism(&a, &a.shift(1))));
    }

    #[test]
    fn ptriv_examples() {
        let f = fp();
        let r = free_module(f, 3, &[0]);
        let a = m_xi(f, 3, &[1, 0, 0]).unwrap();
        let h = hom_space(&r, &a).unwrap();
        assert_eq!(h.stable_dim(), 0);
        assert_eq!(hom_space(&a, &a).unwrap().ptriv().dim(), 0);
        for j in -1..=3 {
            let n = a.shift(j);
            assert_eq!(factor_through_projectives(&a, &n).unwrap(), factor_through_cover(&a, &n).unwrap());
        }
    }

    #[test]
    fn stable_hom_table() {
        let f = fp();
        for nv in [2, 3, 4] {
            let n = nv - 1;
            let a = m_xi(f, nv, &unit_form(nv, 0)).unwrap();
            for i in -2..=(n as i32 + 2) {
                let expect = crate::exterior::binomial(n as i64, i as i64);
                assert_eq!(stable_hom_dim(&a, &a.shift(i)).unwrap(), expect, "n={n} i={i}");
            }
        }
        let s = |i: i32| kronecker_f(f, i, -i);
        for i in -2..=2 {
            for j in -2..=2 {
                assert_eq!(stable_hom_dim(&s(i), &s(j)).unwrap(), (i == j) as usize, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn ext_examples() {
        let f = fp();
        let a = m_xi(f, 3, &[1, 0, 0]).unwrap();
        assert_eq!(ext_dim(&a, &a, 1).unwrap(), 2);
        assert_eq!(ext_dim(&a, &a.shift(1), 1).unwrap(), 1);
        assert_eq!(ext_dim(&simple(f, 2), &simple(f, 2), 1).unwrap(), 0);
        for i in -3..=3 {
            let n = a.shift(i);
            assert_eq!(ext_dim(&a, &n, 1).unwrap(), ext1_by_counting(&a, &n).unwrap());
            assert_eq!(ext_dim(&a, &n, 2).unwrap(), ext_dim(&syzygy(&a, 1), &n, 1).unwrap());
        }
    }

    #[test]
    fn algebra_examples() {
        let f = fp();
        let k = FiniteAlgebra::new(f, vec![vec![vec![1]]], vec![1]).unwrap();
        assert!(k.radical().unwrap().is_zero());
        // k[t]/t² with basis 1, t.
        let dual = FiniteAlgebra::new(f, vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]], vec![1, 0])
            .unwrap();
        assert!(dual.is_associative() && dual.has_unit());
        assert_eq!(dual.radical().unwrap().dim(), 1);
        assert!(truncated_poly_fingerprint(&dual, 1, 2).unwrap());
        let small = Fp::new(5).unwrap();
        let big = FiniteAlgebra::new(small, vec![vec![vec![0; 5]; 5]; 5], vec![1, 0, 0, 0, 0]).unwrap();
        assert!(matches!(big.radical(), Err(Error::DimTooLarge { .. })));
    }

    #[test]
    fn end_examples() {
        let f = fp();
        let a = m_xi(f, 3, &[1, 0, 0]).unwrap();
        assert_eq!(end_algebra(&a).unwrap().dim(), 1);
        assert_eq!(end_algebra(&free_module(f, 3, &[0])).unwrap().dim(), 1);
        assert!(is_indecomposable(&a).unwrap());
        assert!(!is_indecomposable(&direct_sum(&a, &a).unwrap().module).unwrap());
        for d in 1..=3 {
            let p = build_p_explicit(f, 3, d).unwrap().module;
            let e = end_algebra(&p).unwrap();
            assert!(e.is_associative() && e.has_unit());
            assert!(e.is_local());
            assert!(truncated_poly_fingerprint(&e, 2, d).unwrap(), "d={d}");
        }
    }

    #[test]
    fn square_zero_ext() {
        let f = fp();
        let s = simple(f, 2);
        let (a, b) = square_zero_ext1_data(&s, &s.shift(-1)).unwrap();
        assert_eq!((a, b), (2, 2));
        let pbar = free_module(f, 2, &[0]).square_truncate().0;
        assert_eq!(ext1_square_zero(&pbar, &s).unwrap(), 0);
        let a = m_xi(f, 3, &[1, 0, 0]).unwrap();
        let abar = a.square_truncate().0;
        assert_eq!(ext1_square_zero(&abar, &abar).unwrap(), ext_dim(&a, &a, 1).unwrap());
    }
}
