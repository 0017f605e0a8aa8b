//! Local and global contractions of a quotient family `g̃ / i_s`, where
//! `i_s = s⁻¹·i` is the dilated ideal.
//!
//! Both limits are computed from an echelon form of `i` adapted to the degree
//! filtration, and every parametric map is stored as a matrix of Laurent
//! polynomials in `s`.

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::laurent::{Laurent, ParamMatrix};
use crate::linalg::{self, Matrix};
use crate::scalar::{int, Coeff, Scalar};
use crate::subspace::Subspace;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Local,
    Global,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Local => "local",
            Side::Global => "global",
        }
    }
}

/// Basis of `i` adapted to the degree filtration.
///
/// For the local side the first `breakpoint(j)` vectors span the part of `i`
/// lying in degrees `≤ j`; for the global side, in degrees `≥ j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagBasis {
    pub vectors: Matrix,
    /// Degree of the leading (local: top, global: bottom) component.
    pub leading_degrees: Vec<u32>,
    pub side: Side,
}

impl FlagBasis {
    pub fn breakpoint(&self, j: u32) -> usize {
        match self.side {
            Side::Local => self.leading_degrees.iter().filter(|&&d| d <= j).count(),
            Side::Global => self.leading_degrees.iter().filter(|&&d| d >= j).count(),
        }
    }
}

fn layer(v: &[Scalar], degrees: &[u32], d: u32) -> Vec<Scalar> {
    v.iter()
        .zip(degrees)
        .map(|(x, &dj)| if dj == d { x.clone() } else { int(0) })
        .collect()
}

struct SideData {
    limit: Subspace,
    flag: FlagBasis,
    psi: ParamMatrix,
    projection: ParamMatrix,
}

fn compute_side(ambient: &LieAlgebra, ideal: &Subspace, side: Side) -> Result<SideData> {
    let deg = ambient.degrees()?;
    let n = ambient.dim();
    let mut order: Vec<usize> = (0..n).collect();
    match side {
        Side::Local => order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b))),
        Side::Global => order.sort_by(|&a, &b| deg[a].cmp(&deg[b]).then(a.cmp(&b))),
    }
    let (rows, pivots) = linalg::rref_in_order(ideal.basis(), &order);
    let mut flagged: Vec<(u32, Vec<Scalar>, Vec<Scalar>)> = rows
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let d = deg[p];
            let lead = layer(&row, deg, d);
            (d, row, lead)
        })
        .collect();
    match side {
        Side::Local => flagged.sort_by_key(|f| f.0),
        Side::Global => flagged.sort_by_key(|f| core::cmp::Reverse(f.0)),
    }
    let leads: Vec<Vec<Scalar>> = flagged.iter().map(|f| f.2.clone()).collect();
    let limit = Subspace::span(n, &leads)?;
    let flag = FlagBasis {
        vectors: flagged.iter().map(|f| f.1.clone()).collect(),
        leading_degrees: flagged.iter().map(|f| f.0).collect(),
        side,
    };

    // ψ composed with the projection onto the limit ideal along the
    // coordinate complement: column c is ψ(pr(e_c)).
    let mut psi = ParamMatrix::zeros(n, n);
    for (row, &p) in limit.basis().iter().zip(limit.pivots()) {
        let d = deg[p];
        let same: Vec<usize> = (0..flagged.len()).filter(|&k| flagged[k].0 == d).collect();
        let lead_rows: Vec<Vec<Scalar>> = same.iter().map(|&k| flagged[k].2.clone()).collect();
        let coef = linalg::solve_combination(&lead_rows, row)
            .ok_or_else(|| Error::InvalidAlgebra(String::from("limit ideal is not graded")))?;
        for (a, &k) in coef.iter().zip(&same) {
            if a.is_zero() {
                continue;
            }
            let e = &flagged[k].1;
            for (i, x) in e.iter().enumerate() {
                if x.is_zero() || deg[i] == d {
                    continue;
                }
                let power = d as i32 - deg[i] as i32;
                let keep = match side {
                    Side::Local => power > 0,
                    Side::Global => power < 0,
                };
                if keep {
                    psi.add_to(i, p, &Laurent::monomial(power, a * x));
                }
            }
        }
    }

    // Projection onto the coordinate complement along the limit ideal.
    let mut base = ParamMatrix::identity(n);
    for (row, &p) in limit.basis().iter().zip(limit.pivots()) {
        for (i, x) in row.iter().enumerate() {
            if !x.is_zero() {
                base.add_to(i, p, &Laurent::constant(-x.clone()));
            }
        }
    }
    // (I + ψ)^{-1} as a terminating Neumann series.
    let neg = psi.neg();
    let mut inv = ParamMatrix::identity(n);
    let mut term = ParamMatrix::identity(n);
    for _ in 0..=n {
        term = term.mul(&neg);
        if term.is_zero() {
            break;
        }
        inv = inv.add(&term);
    }
    let projection = base.mul(&inv);
    Ok(SideData { limit, flag, psi, projection })
}

/// Structure constants of the induced brackets `[x, y]_s = P_s[x, y]` on a
/// coordinate complement, as Laurent polynomials in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedBrackets {
    pub side: Side,
    /// Ambient coordinates of the complement.
    pub index: Vec<usize>,
    /// Ambient degrees of those coordinates.
    pub degrees: Vec<u32>,
    pub labels: Vec<String>,
    consts: Vec<(usize, usize, Vec<Laurent>)>,
}

impl InducedBrackets {
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn constants(&self) -> &[(usize, usize, Vec<Laurent>)] {
        &self.consts
    }

    pub fn constant(&self, a: usize, b: usize) -> Vec<Laurent> {
        for (i, j, v) in &self.consts {
            if (*i, *j) == (a, b) {
                return v.clone();
            }
            if (*i, *j) == (b, a) {
                return v.iter().map(Coeff::negated).collect();
            }
        }
        vec![Laurent::zero(); self.dim()]
    }

    /// The bracket at a nonzero rational parameter (no gradation in general).
    pub fn at(&self, s: &Scalar) -> Result<LieAlgebra> {
        if s.is_zero() {
            return Err(Error::InvalidArgument(String::from("s must be nonzero; use limit()")));
        }
        let rels: Vec<_> = self
            .consts
            .iter()
            .map(|(a, b, v)| (*a, *b, v.iter().map(|l| l.eval(s)).collect()))
            .collect();
        Ok(LieAlgebra::ungraded(self.dim(), &rels)?.with_labels(self.labels.clone()))
    }

    /// The contracted bracket (`s → 0` locally, `s → ∞` globally), graded.
    pub fn limit(&self) -> Result<LieAlgebra> {
        let mut rels = Vec::new();
        for (a, b, v) in &self.consts {
            let mut w = Vec::with_capacity(v.len());
            for l in v {
                let x = match self.side {
                    Side::Local => l.at_zero(),
                    Side::Global => l.at_infinity(),
                };
                w.push(x.ok_or_else(|| {
                    Error::InvalidAlgebra(String::from("induced bracket diverges at the limit"))
                })?);
            }
            rels.push((*a, *b, w));
        }
        Ok(LieAlgebra::graded(self.degrees.clone(), &rels)?.with_labels(self.labels.clone()))
    }

    /// Whether each constant `c_ab^c(s)` is a multiple of `s^{d_a+d_b-d_c}`,
    /// which is the dilation covariance `r·[x,y]_s = [r·x, r·y]_{s/r}`.
    pub fn is_dilation_covariant(&self) -> bool {
        self.consts.iter().all(|(a, b, v)| {
            v.iter().enumerate().all(|(c, l)| {
                let p = self.degrees[*a] as i32 + self.degrees[*b] as i32 - self.degrees[c] as i32;
                l.is_monomial_of_power(p)
            })
        })
    }
}

/// An ideal of a graded algebra together with all of its contraction data.
#[derive(Clone, Debug)]
pub struct ContractionFamily {
    ambient: LieAlgebra,
    ideal: Subspace,
    i0: Subspace,
    i_inf: Subspace,
    flag0: FlagBasis,
    flag_inf: FlagBasis,
    psi0: ParamMatrix,
    psi_inf: ParamMatrix,
    p0: ParamMatrix,
    p_inf: ParamMatrix,
    bracket0: InducedBrackets,
    bracket_inf: InducedBrackets,
}

impl ContractionFamily {
    pub fn new(ambient: &LieAlgebra, ideal: &Subspace) -> Result<Self> {
        ambient.degrees()?;
        if ideal.ambient_dim() != ambient.dim() {
            return Err(Error::DimensionMismatch { expected: ambient.dim(), found: ideal.ambient_dim() });
        }
        if !ambient.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let local = compute_side(ambient, ideal, Side::Local)?;
        let global = compute_side(ambient, ideal, Side::Global)?;
        let bracket0 = induced(ambient, &local.limit, &local.projection, Side::Local)?;
        let bracket_inf = induced(ambient, &global.limit, &global.projection, Side::Global)?;
        Ok(ContractionFamily {
            ambient: ambient.clone(),
            ideal: ideal.clone(),
            i0: local.limit,
            i_inf: global.limit,
            flag0: local.flag,
            flag_inf: global.flag,
            psi0: local.psi,
            psi_inf: global.psi,
            p0: local.projection,
            p_inf: global.projection,
            bracket0,
            bracket_inf,
        })
    }

    pub fn ambient(&self) -> &LieAlgebra {
        &self.ambient
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn degrees(&self) -> &[u32] {
        self.ambient.degrees().expect("ambient is graded")
    }

    pub fn limit_ideal(&self, side: Side) -> &Subspace {
        match side {
            Side::Local => &self.i0,
            Side::Global => &self.i_inf,
        }
    }

    pub fn flag(&self, side: Side) -> &FlagBasis {
        match side {
            Side::Local => &self.flag0,
            Side::Global => &self.flag_inf,
        }
    }

    /// `ψ_s ∘ pr`, with `pr` the projection onto the limit ideal along the complement.
    pub fn psi(&self, side: Side) -> &ParamMatrix {
        match side {
            Side::Local => &self.psi0,
            Side::Global => &self.psi_inf,
        }
    }

    /// Projection of `g̃` onto the complement with kernel `i_s` (ambient coordinates).
    pub fn projection(&self, side: Side) -> &ParamMatrix {
        match side {
            Side::Local => &self.p0,
            Side::Global => &self.p_inf,
        }
    }

    /// Ambient coordinates spanning the chosen graded complement.
    pub fn complement_index(&self, side: Side) -> Vec<usize> {
        self.limit_ideal(side).non_pivots()
    }

    pub fn complement(&self, side: Side) -> Subspace {
        Subspace::coordinate(self.ambient.dim(), &self.complement_index(side))
    }

    pub fn induced_bracket(&self, side: Side) -> &InducedBrackets {
        match side {
            Side::Local => &self.bracket0,
            Side::Global => &self.bracket_inf,
        }
    }

    /// `λ_s`: the global projection restricted to the local complement,
    /// written in complement coordinates.
    pub fn lambda(&self) -> ParamMatrix {
        self.p_inf
            .restrict(&self.complement_index(Side::Global), &self.complement_index(Side::Local))
    }

    /// `λ_s⁻¹`: the local projection restricted to the global complement.
    pub fn lambda_inverse(&self) -> ParamMatrix {
        self.p0
            .restrict(&self.complement_index(Side::Local), &self.complement_index(Side::Global))
    }

    /// The dilated ideal `i_s = s⁻¹·i`.
    pub fn ideal_at(&self, s: &Scalar) -> Subspace {
        let inv = s.recip();
        let rows: Vec<Vec<Scalar>> = self
            .ideal
            .basis()
            .iter()
            .map(|r| self.ambient.dilate(&inv, r).expect("graded"))
            .collect();
        Subspace::span(self.ambient.dim(), &rows).expect("same dimension")
    }

    /// Basis order adapted to both complements: shared coordinates first,
    /// then the rest of the local complement, then the rest of the global
    /// complement, then everything else.
    pub fn shared_basis_order(&self) -> Vec<usize> {
        let j0 = self.complement_index(Side::Local);
        let ji = self.complement_index(Side::Global);
        let n = self.ambient.dim();
        let mut out: Vec<usize> = j0.iter().copied().filter(|c| ji.contains(c)).collect();
        out.extend(j0.iter().copied().filter(|c| !ji.contains(c)));
        out.extend(ji.iter().copied().filter(|c| !j0.contains(c)));
        out.extend((0..n).filter(|c| !j0.contains(c) && !ji.contains(c)));
        out
    }

    /// Homogeneous dimension of the contracted algebra on one side.
    pub fn homogeneous_dimension(&self, side: Side) -> u32 {
        let d = self.degrees();
        self.complement_index(side).iter().map(|&c| d[c]).sum()
    }

    /// The contracted algebra `g₀` or `g∞`.
    pub fn contracted(&self, side: Side) -> Result<LieAlgebra> {
        self.induced_bracket(side).limit()
    }

    /// `g̃ / i`, the member of the family at `s = 1` in intrinsic form.
    pub fn quotient_at_one(&self) -> Result<LieAlgebra> {
        Ok(self.ambient.quotient(&self.ideal)?.algebra)
    }

    // ---- checks ---------------------------------------------------------

    /// `(I + ψ_1)` maps the limit ideal onto `i`.
    pub fn psi_maps_onto_ideal(&self, side: Side) -> bool {
        let m = self.psi(side).eval(&int(1));
        let lim = self.limit_ideal(side);
        let imgs: Vec<Vec<Scalar>> = lim
            .basis()
            .iter()
            .map(|v| {
                let pv = linalg::mat_vec(&m, v);
                v.iter().zip(pv).map(|(a, b)| a + b).collect()
            })
            .collect();
        Subspace::span(self.ambient.dim(), &imgs).map_or(false, |s| s == self.ideal)
    }

    /// The limit ideal is a graded ideal of the ambient algebra of dimension `dim i`.
    pub fn limit_is_graded_ideal(&self, side: Side) -> bool {
        let lim = self.limit_ideal(side);
        lim.dim() == self.ideal.dim() && lim.is_graded(self.degrees()) && self.ambient.is_ideal(lim)
    }

    /// The graded complement is an algebraic complement of `i_s`.
    pub fn complement_stable_at(&self, side: Side, s: &Scalar) -> bool {
        self.complement(side).is_complement_of(&self.ideal_at(s))
    }

    /// `P_s` kills `i_s`, fixes the complement and maps into it.
    pub fn projection_valid_at(&self, side: Side, s: &Scalar) -> bool {
        let p = self.projection(side).eval(s);
        let idx = self.complement_index(side);
        let n = self.ambient.dim();
        let kills = self
            .ideal_at(s)
            .basis()
            .iter()
            .all(|v| linalg::mat_vec(&p, v).iter().all(|x| x.is_zero()));
        let fixes = idx.iter().all(|&c| {
            let e = crate::scalar::unit_vector(n, c);
            linalg::mat_vec(&p, &e) == e
        });
        let into = (0..n).all(|r| idx.contains(&r) || p[r].iter().all(|x| x.is_zero()));
        kills && fixes && into
    }

    /// Entry `(i, j)` of each structure map is a multiple of
    /// `s^{d_j - d_i}`, i.e. `M_{rs} = r⁻¹·M_s(r·)`.
    pub fn maps_are_dilation_covariant(&self) -> bool {
        let d = self.degrees();
        let check = |m: &ParamMatrix, rows: &[usize], cols: &[usize]| {
            m.entries().all(|(i, j, l)| {
                l.is_monomial_of_power(d[cols[j]] as i32 - d[rows[i]] as i32)
            })
        };
        let all: Vec<usize> = (0..self.ambient.dim()).collect();
        let j0 = self.complement_index(Side::Local);
        let ji = self.complement_index(Side::Global);
        check(&self.p0, &all, &all)
            && check(&self.p_inf, &all, &all)
            && check(&self.psi0, &all, &all)
            && check(&self.psi_inf, &all, &all)
            && check(&self.lambda(), &ji, &j0)
            && check(&self.lambda_inverse(), &j0, &ji)
    }

    /// ψ₀ has only positive powers of `s`, ψ∞ only negative powers.
    pub fn psi_vanishes_at_limits(&self) -> bool {
        self.psi0.entries().all(|(_, _, l)| l.min_power().map_or(true, |p| p > 0))
            && self.psi_inf.entries().all(|(_, _, l)| l.max_power().map_or(true, |p| p < 0))
    }

    /// `P₀,ₛ − P₀,₀` strictly lowers degree and `P∞,ₛ − P∞,∞` strictly raises it.
    pub fn projection_homogeneity_ledger(&self) -> bool {
        let d = self.degrees();
        let ok = |m: &ParamMatrix, side: Side| {
            m.entries().all(|(i, j, l)| {
                l.terms().all(|(p, _)| match (p, side) {
                    (0, _) => d[i] == d[j],
                    (p, Side::Local) => p > 0 && d[i] < d[j],
                    (p, Side::Global) => p < 0 && d[i] > d[j],
                })
            })
        };
        ok(&self.p0, Side::Local) && ok(&self.p_inf, Side::Global)
    }

    /// `λ_s − λ_∞` strictly raises degree, and `λ_∞` is the identity on
    /// coordinates shared by both complements.
    pub fn lambda_super_homogeneous(&self) -> bool {
        let d = self.degrees();
        let j0 = self.complement_index(Side::Local);
        let ji = self.complement_index(Side::Global);
        self.lambda().entries().all(|(r, c, l)| {
            let (row, col) = (ji[r], j0[c]);
            l.terms().all(|(p, x)| match p {
                0 => d[row] == d[col] && (!j0.contains(&row) || row != col || *x == int(1)),
                p => p < 0 && d[row] > d[col],
            }) && (row == col || !j0.contains(&row) || !ji.contains(&col) || l.coefficient(0).is_zero())
        })
    }

    /// `λ_s [x,y]₀,ₛ = [λ_s x, λ_s y]∞,ₛ` at one rational point.
    pub fn lambda_intertwines(&self, x: &[Scalar], y: &[Scalar], s: &Scalar) -> Result<bool> {
        let g0 = self.bracket0.at(s)?;
        let gi = self.bracket_inf.at(s)?;
        let lam = self.lambda().eval(s);
        let lhs = linalg::mat_vec(&lam, &g0.bracket(x, y)?);
        let rhs = gi.bracket(&linalg::mat_vec(&lam, x), &linalg::mat_vec(&lam, y))?;
        Ok(lhs == rhs)
    }

    /// `λ_s` and `λ_s⁻¹` are mutually inverse at `s`.
    pub fn lambda_inverse_valid_at(&self, s: &Scalar) -> bool {
        let a = self.lambda().eval(s);
        let b = self.lambda_inverse().eval(s);
        let ab = linalg::mat_mul(&a, &b);
        let ba = linalg::mat_mul(&b, &a);
        ab == linalg::identity(ab.len()) && ba == linalg::identity(ba.len())
    }
}

fn induced(
    ambient: &LieAlgebra,
    limit: &Subspace,
    projection: &ParamMatrix,
    side: Side,
) -> Result<InducedBrackets> {
    let deg = ambient.degrees()?;
    let index = limit.non_pivots();
    let n = ambient.dim();
    let mut consts = Vec::new();
    for a in 0..index.len() {
        for b in (a + 1)..index.len() {
            let ea = crate::scalar::unit_vector(n, index[a]);
            let eb = crate::scalar::unit_vector(n, index[b]);
            let v = ambient.bracket(&ea, &eb)?;
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            let lv: Vec<Laurent> = v.into_iter().map(Laurent::constant).collect();
            let pv = projection.apply(&lv);
            let restricted: Vec<Laurent> = index.iter().map(|&c| pv[c].clone()).collect();
            if restricted.iter().any(|l| !Coeff::is_nil(l)) {
                consts.push((a, b, restricted));
            }
        }
    }
    Ok(InducedBrackets {
        side,
        degrees: index.iter().map(|&c| deg[c]).collect(),
        labels: index.iter().map(|&c| ambient.labels()[c].clone()).collect(),
        index,
        consts,
    })
}
