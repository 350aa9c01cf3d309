//! Graded direct summands R = A[f_1,...,f_t] of a polynomial ring S:
//! splittings, finite test-multiplier sets, subalgebra membership,
//! presentations, and the summand differential power.

pub mod invariant;
mod mixed;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

pub use invariant::{GroupAction, GroupElement};
pub use mixed::summand_mixed_power_profile;

use crate::diffops::enumerate_operators;
use crate::error::{Error, Result};
use crate::groebner::{elimination_ideal, IdealHandle, MonomialOrder};
use crate::monomial::{monomials_of_weighted_degree, Monomial};
use crate::pderiv::PDerivation;
use crate::poly::Polynomial;
use crate::ring::{CoeffDomain, Ring, RingDescriptor};

/// Which side of the mod-p bar the splitting acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMode {
    /// beta on S itself (integer coefficients).
    Integral,
    /// beta-bar on S/(p).
    ModP,
}

#[derive(Debug, Clone)]
pub enum SummandFamily {
    /// Subring generated by all monomials of a fixed plain degree.
    Veronese { degree: u64 },
    /// Subring generated by the products of one variable from each block.
    Segre { rows: usize, cols: usize },
    /// Subring generated by arbitrary monomials, split by semigroup support.
    MonomialSubring,
    /// Ring of invariants of a finite group action with the Reynolds
    /// splitting. Diagonal sign actions are routed through the monomial
    /// machinery; permutation actions use Reynolds averaging.
    Invariant { action: GroupAction },
}

/// A graded direct summand with its splitting and cached presentations.
pub struct SummandSpec {
    ring: Ring,
    family: SummandFamily,
    generators: Vec<Polynomial>,
    /// Exponent vectors generating the monomial semigroup, when the family
    /// is monomial (Veronese, Segre, monomial subrings, diagonal invariants).
    monomial_gens: Option<Vec<Monomial>>,
    max_degree: u64,
    module_cap: u64,
    presentation: OnceLock<std::result::Result<PresentedAlgebra, Error>>,
    tag: OnceLock<std::result::Result<TagContext, Error>>,
    module_gens: OnceLock<std::result::Result<Vec<Monomial>, Error>>,
    semigroup_memo: Mutex<HashMap<Monomial, bool>>,
}

impl std::fmt::Debug for SummandSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SummandSpec")
            .field("ring", &self.ring)
            .field("family", &self.family)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Clone for SummandSpec {
    fn clone(&self) -> Self {
        let clone_lock = |src: &OnceLock<std::result::Result<PresentedAlgebra, Error>>| {
            let dst = OnceLock::new();
            if let Some(v) = src.get() {
                let _ = dst.set(v.clone());
            }
            dst
        };
        let tag = OnceLock::new();
        if let Some(v) = self.tag.get() {
            let _ = tag.set(v.clone());
        }
        let module_gens = OnceLock::new();
        if let Some(v) = self.module_gens.get() {
            let _ = module_gens.set(v.clone());
        }
        SummandSpec {
            ring: self.ring.clone(),
            family: self.family.clone(),
            generators: self.generators.clone(),
            monomial_gens: self.monomial_gens.clone(),
            max_degree: self.max_degree,
            module_cap: self.module_cap,
            presentation: clone_lock(&self.presentation),
            tag,
            module_gens,
            semigroup_memo: Mutex::new(self.semigroup_memo.lock().unwrap().clone()),
        }
    }
}

/// Tag-variable machinery shared by subalgebra membership and presentations.
#[derive(Debug, Clone)]
struct TagContext {
    extended: Ring,
    /// Positions of the ambient variables inside the extended ring.
    x_map: Vec<usize>,
    /// Positions of the presentation variables inside the extended ring.
    y_map: Vec<usize>,
    tags_z: IdealHandle,
    tags_p: IdealHandle,
    presentation_ring: Ring,
}

impl SummandSpec {
    fn build(
        ring: Ring,
        family: SummandFamily,
        generators: Vec<Polynomial>,
        monomial_gens: Option<Vec<Monomial>>,
    ) -> Result<Self> {
        if ring.domain() != CoeffDomain::Integers {
            return Err(Error::ConfigError(
                "summands are described over the integers".into(),
            ));
        }
        if generators.is_empty() {
            return Err(Error::ConfigError(
                "summand needs at least one generator".into(),
            ));
        }
        let mut max_degree = 0u64;
        for g in &generators {
            match g.weighted_degree()? {
                crate::poly::WeightedDegree::Homogeneous(d) => max_degree = max_degree.max(d),
                crate::poly::WeightedDegree::NonHomogeneous => {
                    return Err(Error::ConfigError(
                        "summand generators must be homogeneous".into(),
                    ))
                }
            }
        }
        let module_cap = 4 * max_degree.max(1);
        Ok(SummandSpec {
            ring,
            family,
            generators,
            monomial_gens,
            max_degree,
            module_cap,
            presentation: OnceLock::new(),
            tag: OnceLock::new(),
            module_gens: OnceLock::new(),
            semigroup_memo: Mutex::new(HashMap::new()),
        })
    }

    /// The full Veronese subring of the given standard-graded ring.
    pub fn veronese(ring: &Ring, degree: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ConfigError(
                "Veronese degree must be positive".into(),
            ));
        }
        if ring.weights().iter().any(|&w| w != 1) {
            return Err(Error::ConfigError(
                "the Veronese family assumes weights all one".into(),
            ));
        }
        let mut monos = monomials_of_weighted_degree(ring.num_vars(), ring.weights(), degree);
        // Descending default order, so y1 names the lexicographically top
        // generator (s^2, st, t^2 for two variables).
        let order = MonomialOrder::grevlex(ring);
        monos.sort_by(|a, b| order.cmp(b, a));
        let gens = monos
            .iter()
            .map(|m| Polynomial::monomial(ring, m.clone(), 1))
            .collect();
        Self::build(
            ring.clone(),
            SummandFamily::Veronese { degree },
            gens,
            Some(monos),
        )
    }

    /// The Segre product: builds its own ambient ring with variable blocks
    /// u1..u_rows and v1..v_cols, generated by all products u_i * v_j in
    /// row-major order.
    pub fn segre(rows: usize, cols: usize, p: u64) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ConfigError("Segre blocks must be nonempty".into()));
        }
        let mut names: Vec<String> = (1..=rows).map(|i| format!("u{i}")).collect();
        names.extend((1..=cols).map(|j| format!("v{j}")));
        let ring = Ring::new(RingDescriptor::new(
            names,
            vec![1; rows + cols],
            CoeffDomain::Integers,
            p,
        )?);
        let mut monos = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                let mut e = vec![0u64; rows + cols];
                e[i] = 1;
                e[rows + j] = 1;
                monos.push(Monomial::new(e));
            }
        }
        let gens = monos
            .iter()
            .map(|m| Polynomial::monomial(&ring, m.clone(), 1))
            .collect();
        Self::build(
            ring.clone(),
            SummandFamily::Segre { rows, cols },
            gens,
            Some(monos),
        )
    }

    /// A subring generated by explicit monomials, split by semigroup support.
    pub fn monomial_subring(ring: &Ring, monomials: Vec<Monomial>) -> Result<Self> {
        if monomials.iter().any(|m| m.is_one()) {
            return Err(Error::ConfigError(
                "the unit monomial is not a subring generator".into(),
            ));
        }
        let gens = monomials
            .iter()
            .map(|m| Polynomial::monomial(ring, m.clone(), 1))
            .collect();
        Self::build(
            ring.clone(),
            SummandFamily::MonomialSubring,
            gens,
            Some(monomials),
        )
    }

    /// The ring of invariants of a finite group action. Requires
    /// gcd(|G|, p) = 1 so the Reynolds splitting exists mod p. Ring
    /// generators are found under the Noether degree bound |G|.
    pub fn invariant(ring: &Ring, action: GroupAction) -> Result<Self> {
        if ring.weights().iter().any(|&w| w != 1) {
            return Err(Error::ConfigError(
                "the invariant family assumes weights all one".into(),
            ));
        }
        if action.order().is_multiple_of(ring.p()) {
            return Err(Error::ConfigError(format!(
                "group order {} must be coprime with p = {}",
                action.order(),
                ring.p()
            )));
        }
        if action.is_diagonal() {
            // Invariant monomials form a semigroup; take its minimal
            // generators up to the Noether bound.
            let bound = action.order();
            let order = MonomialOrder::grevlex(ring);
            let mut gens: Vec<Monomial> = Vec::new();
            for d in 1..=bound {
                let mut layer = monomials_of_weighted_degree(ring.num_vars(), ring.weights(), d);
                layer.sort_by(|a, b| order.cmp(b, a));
                for m in layer {
                    if !action.monomial_invariant(&m) {
                        continue;
                    }
                    let decomposable = gens
                        .iter()
                        .any(|g| g.divides(&m) && semigroup_member_raw(&gens, &g.divide_into(&m)));
                    if !decomposable {
                        gens.push(m);
                    }
                }
            }
            if gens.is_empty() {
                return Err(Error::ConfigError(
                    "no invariant monomials up to the Noether bound".into(),
                ));
            }
            let polys = gens
                .iter()
                .map(|m| Polynomial::monomial(ring, m.clone(), 1))
                .collect();
            return Self::build(
                ring.clone(),
                SummandFamily::Invariant { action },
                polys,
                Some(gens),
            );
        }
        // Permutation actions: orbit sums up to the Noether bound,
        // minimalized degreewise modulo p.
        let gens = minimal_orbit_sum_generators(ring, &action)?;
        Self::build(
            ring.clone(),
            SummandFamily::Invariant { action },
            gens,
            None,
        )
    }

    pub fn ambient(&self) -> &Ring {
        &self.ring
    }

    pub fn family(&self) -> &SummandFamily {
        &self.family
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// D, the largest generator degree.
    pub fn max_generator_degree(&self) -> u64 {
        self.max_degree
    }

    pub fn with_module_cap(mut self, cap: u64) -> Self {
        self.module_cap = cap;
        self
    }

    pub fn is_monomial_family(&self) -> bool {
        self.monomial_gens.is_some()
    }

    /// Whether the fixed Frobenius lift x -> x^p maps R into itself,
    /// verified on the ring generators.
    pub fn frobenius_closed(&self) -> Result<bool> {
        let pd = PDerivation::new(&self.ring)?;
        for g in &self.generators {
            if self.subalgebra_member(&pd.frobenius(g)?)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn monomial_in_subring(&self, m: &Monomial) -> bool {
        match &self.family {
            SummandFamily::Veronese { degree } => m.total_degree().is_multiple_of(*degree),
            SummandFamily::Segre { rows, cols: _ } => {
                let e = m.exponents();
                let ydeg: u64 = e[..*rows].iter().sum();
                let zdeg: u64 = e[*rows..].iter().sum();
                ydeg == zdeg
            }
            SummandFamily::MonomialSubring => self.semigroup_member(m),
            SummandFamily::Invariant { action } => {
                debug_assert!(action.is_diagonal());
                action.monomial_invariant(m)
            }
        }
    }

    fn semigroup_member(&self, m: &Monomial) -> bool {
        if m.is_one() {
            return true;
        }
        if let Some(hit) = self.semigroup_memo.lock().unwrap().get(m) {
            return *hit;
        }
        let gens = self
            .monomial_gens
            .as_ref()
            .expect("semigroup test on monomial family");
        let result = gens
            .iter()
            .any(|g| g.divides(m) && self.semigroup_member(&g.divide_into(m)));
        self.semigroup_memo
            .lock()
            .unwrap()
            .insert(m.clone(), result);
        result
    }

    /// The graded splitting beta: S -> R (or beta-bar on S/(p)).
    pub fn beta_apply(&self, g: &Polynomial, mode: SplitMode) -> Result<Polynomial> {
        match mode {
            SplitMode::Integral => {
                if g.ring().domain() != CoeffDomain::Integers || !g.ring().same_ring(&self.ring) {
                    return Err(Error::RingMismatch);
                }
            }
            SplitMode::ModP => {
                if g.ring().domain() != CoeffDomain::IntegersModP
                    || !g.ring().same_ring(&self.ring.mod_p_twin())
                {
                    return Err(Error::RingMismatch);
                }
            }
        }
        match &self.family {
            SummandFamily::Invariant { action } if !action.is_diagonal() => match mode {
                SplitMode::Integral => action.reynolds_integral(g),
                SplitMode::ModP => action.reynolds_mod_p(g),
            },
            _ => {
                let mut out = Polynomial::zero(g.ring());
                for (m, c) in g.terms() {
                    if self.monomial_in_subring(m) {
                        out.add_term(m.clone(), c.clone());
                    }
                }
                Ok(out)
            }
        }
    }

    /// Finite multiplier set T(g): beta-bar(g * S-bar) lies in an ideal of
    /// R-bar iff beta-bar(g * m) does for every m in T(g).
    pub fn test_multipliers(&self, g: &Polynomial) -> Result<Vec<Monomial>> {
        let num_vars = self.ring.num_vars();
        match &self.family {
            SummandFamily::Veronese { degree } => {
                let mut classes: Vec<u64> = Vec::new();
                for (m, _) in g.terms() {
                    let r = m.total_degree() % degree;
                    if !classes.contains(&r) {
                        classes.push(r);
                    }
                }
                let mut out = Vec::new();
                for r in classes {
                    if r == 0 {
                        out.push(Monomial::one(num_vars));
                        continue;
                    }
                    for m in monomials_of_weighted_degree(num_vars, self.ring.weights(), degree - r)
                    {
                        if !out.contains(&m) {
                            out.push(m);
                        }
                    }
                }
                Ok(out)
            }
            SummandFamily::Segre { rows, cols } => {
                let mut imbalances: Vec<i64> = Vec::new();
                for (m, _) in g.terms() {
                    let e = m.exponents();
                    let ydeg: i64 = e[..*rows].iter().map(|&x| x as i64).sum();
                    let zdeg: i64 = e[*rows..].iter().map(|&x| x as i64).sum();
                    let k = ydeg - zdeg;
                    if !imbalances.contains(&k) {
                        imbalances.push(k);
                    }
                }
                let mut out = Vec::new();
                for k in imbalances {
                    if k == 0 {
                        out.push(Monomial::one(num_vars));
                        continue;
                    }
                    // Balance with pure monomials in the opposite block.
                    let (block_len, offset) = if k > 0 { (*cols, *rows) } else { (*rows, 0) };
                    let deg = k.unsigned_abs();
                    let map: Vec<usize> = (offset..offset + block_len).collect();
                    for small in monomials_of_weighted_degree(block_len, &vec![1; block_len], deg) {
                        let m = small.embed(num_vars, &map);
                        if !out.contains(&m) {
                            out.push(m);
                        }
                    }
                }
                Ok(out)
            }
            SummandFamily::MonomialSubring | SummandFamily::Invariant { .. } => {
                self.module_generators().map(|v| v.to_vec())
            }
        }
    }

    /// A finite set of monomials generating S-bar as an R-bar module,
    /// found degree by degree; a window of max-degree-times-variables
    /// consecutive silent degrees ends the search, and a hard cap guards
    /// termination.
    pub fn module_generators(&self) -> Result<&[Monomial]> {
        let entry = self.module_gens.get_or_init(|| match &self.family {
            SummandFamily::Invariant { action } if !action.is_diagonal() => {
                invariant_module_generators(self, action)
            }
            _ => monomial_module_generators(self),
        });
        entry.as_ref().map(|v| v.as_slice()).map_err(|e| e.clone())
    }

    fn tag_context(&self) -> Result<&TagContext> {
        let entry = self.tag.get_or_init(|| build_tag_context(self));
        entry.as_ref().map_err(|e| e.clone())
    }

    /// The presentation ring ZZ[y1..yt] with y_i weighted by deg(f_i).
    pub fn presentation_ring(&self) -> Result<Ring> {
        Ok(self.tag_context()?.presentation_ring.clone())
    }

    /// Subalgebra membership with representation: returns the element of the
    /// presentation ring mapping to `g`, when `g` lies in R (or R-bar for
    /// mod-p inputs).
    pub fn subalgebra_member(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        let ctx = self.tag_context()?;
        let modp = g.ring().domain() == CoeffDomain::IntegersModP;
        let (target, tags) = if modp {
            (ctx.extended.mod_p_twin(), &ctx.tags_p)
        } else {
            (ctx.extended.clone(), &ctx.tags_z)
        };
        let expected = if modp {
            self.ring.mod_p_twin()
        } else {
            self.ring.clone()
        };
        if !g.ring().same_ring(&expected) {
            return Err(Error::RingMismatch);
        }
        let embedded = g.map_variables(&target, &ctx.x_map);
        let nf = tags.normal_form(&embedded)?;
        let pure = nf
            .terms()
            .all(|(m, _)| ctx.x_map.iter().all(|&i| m.exponents()[i] == 0));
        if !pure {
            return Ok(None);
        }
        let pres = if modp {
            ctx.presentation_ring.mod_p_twin()
        } else {
            ctx.presentation_ring.clone()
        };
        let restricted = Polynomial::from_terms(
            &pres,
            nf.terms().map(|(m, c)| (m.restrict(&ctx.y_map), c.clone())),
        );
        Ok(Some(restricted))
    }

    /// The kernel presentation `R = A[y]/J`, with the structure map verified.
    pub fn presentation(&self) -> Result<&PresentedAlgebra> {
        let entry = self.presentation.get_or_init(|| {
            let ctx = match self.tag_context() {
                Ok(c) => c,
                Err(e) => return Err(e),
            };
            let kernel_ext = match elimination_ideal(&ctx.tags_z, &ctx.y_map) {
                Ok(k) => k,
                Err(e) => return Err(e),
            };
            let kernel: Vec<Polynomial> = kernel_ext
                .generators()
                .iter()
                .map(|f| {
                    let moved = Polynomial::from_terms(
                        &ctx.presentation_ring,
                        f.terms().map(|(m, c)| (m.restrict(&ctx.y_map), c.clone())),
                    );
                    // Positive sign on the display-leading term.
                    let weights = ctx.presentation_ring.weights().to_vec();
                    let lead_negative = moved
                        .terms()
                        .max_by(|a, b| crate::parse::display_cmp(a.0, b.0, &weights))
                        .map(|(_, c)| num_traits::Signed::is_negative(c))
                        .unwrap_or(false);
                    if lead_negative {
                        moved.neg_ref()
                    } else {
                        moved
                    }
                })
                .collect();
            let presented = PresentedAlgebra {
                ring: ctx.presentation_ring.clone(),
                kernel,
                images: self.generators.clone(),
                ambient: self.ring.clone(),
            };
            // The structure map must kill every kernel generator.
            for j in &presented.kernel {
                match presented.substitute(j) {
                    Ok(image) => {
                        if !image.is_zero() {
                            return Err(Error::ConfigError(
                                "presentation kernel fails verification".into(),
                            ));
                        }
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(presented)
        });
        entry.as_ref().map_err(|e| e.clone())
    }

    /// Membership in the summand differential power of an ideal of R that
    /// contains p. `x` is given in ambient form; `a_gens` generate the ideal
    /// in presentation coordinates. Verdicts are decided mod p in the
    /// presentation of R-bar.
    pub fn dq_power_member(&self, x: &Polynomial, a_gens: &[Polynomial], n: u32) -> Result<bool> {
        Ok(self
            .dq_power_profile(x, a_gens, n)?
            .last()
            .copied()
            .unwrap_or(true))
    }

    /// Membership verdicts for all indices 1..=n in one operator sweep.
    pub fn dq_power_profile(
        &self,
        x: &Polynomial,
        a_gens: &[Polynomial],
        n: u32,
    ) -> Result<Vec<bool>> {
        assert!(n >= 1, "summand differential powers are indexed from 1");
        if self.subalgebra_member(x)?.is_none() {
            return Err(Error::NotInSummand);
        }
        let presented = self.presentation()?;
        let ideal_z = presented.ideal_with_kernel(a_gens)?;
        let p_poly = Polynomial::constant(&presented.ring, presented.ring.p_bigint());
        if !ideal_z.member(&p_poly)? {
            return Err(Error::PNotInIdeal);
        }
        let ideal_p = presented.ideal_with_kernel_mod_p(a_gens)?;
        let pd = PDerivation::new(&self.ring)?.with_cap(n);

        // violated[k]: some composite of order k escapes the ideal.
        let mut violated = vec![false; n as usize];
        for partial in enumerate_operators(u64::from(n) - 1, &self.ring) {
            let b = partial.order() as u32;
            let dx = partial.apply(x);
            let chain = pd.delta_chain_mod_p(&dx, n - 1 - b)?;
            for (a, w) in chain.iter().enumerate() {
                let order = a as u32 + b;
                if violated[order as usize] || w.is_zero() {
                    continue;
                }
                for mult in self.test_multipliers(w)? {
                    let m_poly = Polynomial::monomial(w.ring(), mult, BigInt::from(1));
                    let image = self.beta_apply(&w.checked_mul(&m_poly)?, SplitMode::ModP)?;
                    if image.is_zero() {
                        continue;
                    }
                    let rep = self.subalgebra_member(&image)?.ok_or_else(|| {
                        Error::ConfigError(
                            "splitting image escaped the summand presentation".into(),
                        )
                    })?;
                    if !ideal_p.member(&rep)? {
                        violated[order as usize] = true;
                        break;
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(n as usize);
        let mut ok = true;
        for v in violated.iter().take(n as usize) {
            ok = ok && !v;
            out.push(ok);
        }
        Ok(out)
    }
}

/// Presentation R = A[y1..yt]/J together with the structure map y_i -> f_i.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    pub ring: Ring,
    pub kernel: Vec<Polynomial>,
    pub images: Vec<Polynomial>,
    pub ambient: Ring,
}

impl PresentedAlgebra {
    /// Applies the structure map to a presentation element.
    pub fn substitute(&self, h: &Polynomial) -> Result<Polynomial> {
        if !h.ring().same_ring(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = Polynomial::zero(&self.ambient);
        for (m, c) in h.terms() {
            let mut term = Polynomial::constant(&self.ambient, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let e32 = u32::try_from(e).map_err(|_| Error::DegreeOverflow)?;
                    term = term.checked_mul(&self.images[i].checked_pow(e32)?)?;
                }
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Ideal (gens) + J in the presentation ring over ZZ.
    pub fn ideal_with_kernel(&self, gens: &[Polynomial]) -> Result<IdealHandle> {
        let mut all: Vec<Polynomial> = gens.to_vec();
        for j in &self.kernel {
            if !all.contains(j) {
                all.push(j.clone());
            }
        }
        if all.is_empty() {
            return Ok(IdealHandle::zero(&self.ring));
        }
        IdealHandle::new(all)
    }

    /// Ideal (gens) + J reduced modulo p.
    pub fn ideal_with_kernel_mod_p(&self, gens: &[Polynomial]) -> Result<IdealHandle> {
        self.ideal_with_kernel(gens)?.reduce_mod_p()
    }

    /// Smallest total y-exponent over the terms of a presentation element —
    /// the exponent floor used in the degree-cap arguments.
    pub fn min_total_exponent(h: &Polynomial) -> Option<u64> {
        h.terms().map(|(m, _)| m.total_degree()).min()
    }
}

fn semigroup_member_raw(gens: &[Monomial], m: &Monomial) -> bool {
    if m.is_one() {
        return true;
    }
    gens.iter()
        .any(|g| g.divides(m) && semigroup_member_raw(gens, &g.divide_into(m)))
}

fn build_tag_context(spec: &SummandSpec) -> std::result::Result<TagContext, Error> {
    let ring = &spec.ring;
    let n = ring.num_vars();
    let t = spec.generators.len();
    let mut extra: Vec<(String, u64)> = Vec::new();
    for (i, g) in spec.generators.iter().enumerate() {
        let d = match g.weighted_degree()? {
            crate::poly::WeightedDegree::Homogeneous(d) => d,
            crate::poly::WeightedDegree::NonHomogeneous => unreachable!("validated homogeneous"),
        };
        let mut name = format!("y{}", i + 1);
        while ring.var_index(&name).is_some() {
            name.push('_');
        }
        extra.push((name, d));
    }
    let extended = ring.extended(
        &extra
            .iter()
            .map(|(s, w)| (s.as_str(), *w))
            .collect::<Vec<_>>(),
    )?;
    let x_map: Vec<usize> = (0..n).collect();
    let y_map: Vec<usize> = (n..n + t).collect();

    let mut tags: Vec<Polynomial> = Vec::new();
    for (i, g) in spec.generators.iter().enumerate() {
        let y = Polynomial::var(&extended, n + i);
        tags.push(y - g.map_variables(&extended, &x_map));
    }
    let order = MonomialOrder::elimination(&extended, x_map.clone());
    let tags_z = IdealHandle::with_order(tags.clone(), order.clone())?;
    let tags_p = IdealHandle::with_order(tags.iter().map(|f| f.reduce_mod_p()).collect(), order)?;

    let presentation_ring = Ring::new(RingDescriptor::new(
        extra.iter().map(|(s, _)| s.clone()).collect(),
        extra.iter().map(|(_, w)| *w).collect(),
        CoeffDomain::Integers,
        ring.p(),
    )?);

    Ok(TagContext {
        extended,
        x_map,
        y_map,
        tags_z,
        tags_p,
        presentation_ring,
    })
}

/// Module generators for monomial families: a monomial is covered when it
/// factors as (generator found earlier) * (semigroup monomial).
fn monomial_module_generators(spec: &SummandSpec) -> std::result::Result<Vec<Monomial>, Error> {
    let ring = &spec.ring;
    let window = spec.max_degree.max(1) * ring.num_vars() as u64;
    let cap = spec.module_cap;
    let mut gens: Vec<Monomial> = Vec::new();
    let mut last_addition = 0u64;
    let mut d = 0u64;
    loop {
        for m in monomials_of_weighted_degree(ring.num_vars(), ring.weights(), d) {
            let covered = gens
                .iter()
                .any(|g| g.divides(&m) && spec.monomial_in_subring(&g.divide_into(&m)));
            if !covered {
                gens.push(m);
                last_addition = d;
            }
        }
        if d >= last_addition + window {
            return Ok(gens);
        }
        if d >= cap {
            return Err(Error::GeneratorBoundExceeded { cap });
        }
        d += 1;
    }
}

/// Module generators for permutation-invariant families, by linear algebra
/// over F_p: a monomial is covered when it lies in the span of
/// (found generator) * (invariant forms of complementary degree).
fn invariant_module_generators(
    spec: &SummandSpec,
    action: &GroupAction,
) -> std::result::Result<Vec<Monomial>, Error> {
    let ring = spec.ring.mod_p_twin();
    let p = ring.p();
    let window = spec.max_degree.max(1) * ring.num_vars() as u64;
    let cap = spec.module_cap;

    // Spanning sets of R-bar in each degree: orbit sums of monomials.
    let invariant_span = |d: u64| -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = Vec::new();
        for m in monomials_of_weighted_degree(ring.num_vars(), ring.weights(), d) {
            let s = action.orbit_sum(&ring, &m).reduce_mod_p();
            if !s.is_zero() && !out.contains(&s) {
                out.push(s);
            }
        }
        out
    };

    let mut gens: Vec<Monomial> = Vec::new();
    let mut last_addition = 0u64;
    let mut d = 0u64;
    loop {
        let monos = monomials_of_weighted_degree(ring.num_vars(), ring.weights(), d);
        let index: HashMap<Monomial, usize> = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut echelon = FpEchelon::new(monos.len(), p);
        for g in &gens {
            let gd = g.weighted_degree(ring.weights());
            if gd > d {
                continue;
            }
            for b in invariant_span(d - gd) {
                let prod = Polynomial::monomial(&ring, g.clone(), 1).checked_mul(&b)?;
                echelon.insert(poly_to_vec(&prod, &index, p));
            }
        }
        for m in &monos {
            let mut v = vec![0u64; monos.len()];
            v[index[m]] = 1;
            if echelon.insert(v) {
                gens.push(m.clone());
                last_addition = d;
            }
        }
        if d >= last_addition + window {
            return Ok(gens);
        }
        if d >= cap {
            return Err(Error::GeneratorBoundExceeded { cap });
        }
        d += 1;
    }
}

/// Ring generators for permutation invariants: orbit sums of monomials up to
/// the Noether degree bound |G|, keeping only those independent (mod p) of
/// products of the generators already found.
fn minimal_orbit_sum_generators(ring: &Ring, action: &GroupAction) -> Result<Vec<Polynomial>> {
    let bound = action.order();
    let p = ring.p();
    let mut gens: Vec<Polynomial> = Vec::new();
    for d in 1..=bound {
        let monos = monomials_of_weighted_degree(ring.num_vars(), ring.weights(), d);
        let index: HashMap<Monomial, usize> = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut echelon = FpEchelon::new(monos.len(), p);
        for prod in degree_products(&gens, d)? {
            echelon.insert(poly_to_vec(&prod.reduce_mod_p(), &index, p));
        }
        let mut seen: Vec<Polynomial> = Vec::new();
        for m in &monos {
            let orbit = action.orbit_sum(ring, m);
            if seen.contains(&orbit) {
                continue;
            }
            seen.push(orbit.clone());
            let v = poly_to_vec(&orbit.reduce_mod_p(), &index, p);
            if echelon.insert(v) {
                gens.push(orbit);
            }
        }
    }
    if gens.is_empty() {
        return Err(Error::ConfigError(
            "no invariants up to the Noether bound".into(),
        ));
    }
    Ok(gens)
}

/// All products of the given homogeneous polynomials with total weighted
/// degree exactly `d` (with repetition).
fn degree_products(gens: &[Polynomial], d: u64) -> Result<Vec<Polynomial>> {
    fn rec(
        gens: &[Polynomial],
        degrees: &[u64],
        i: usize,
        remaining: u64,
        acc: Polynomial,
        out: &mut Vec<Polynomial>,
    ) -> Result<()> {
        if remaining == 0 {
            out.push(acc);
            return Ok(());
        }
        if i == gens.len() {
            return Ok(());
        }
        let mut power = acc;
        let mut used = 0u64;
        loop {
            rec(gens, degrees, i + 1, remaining - used, power.clone(), out)?;
            used += degrees[i];
            if used > remaining {
                return Ok(());
            }
            power = power.checked_mul(&gens[i])?;
        }
    }
    let mut out = Vec::new();
    if gens.is_empty() {
        return Ok(out);
    }
    let degrees: Vec<u64> = gens
        .iter()
        .map(|g| match g.weighted_degree() {
            Ok(crate::poly::WeightedDegree::Homogeneous(dd)) => dd,
            _ => u64::MAX,
        })
        .collect();
    let one = Polynomial::one(gens[0].ring());
    rec(gens, &degrees, 0, d, one, &mut out)?;
    // Drop the empty product (degree 0 only appears when d == 0).
    Ok(out)
}

fn poly_to_vec(f: &Polynomial, index: &HashMap<Monomial, usize>, p: u64) -> Vec<u64> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let mut v = vec![0u64; index.len()];
    let pb = BigInt::from(p);
    for (m, c) in f.terms() {
        v[index[m]] = c.mod_floor(&pb).to_u64().expect("residue fits u64");
    }
    v
}

/// Row echelon accumulator over F_p.
struct FpEchelon {
    width: usize,
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl FpEchelon {
    fn new(width: usize, p: u64) -> Self {
        FpEchelon {
            width,
            p,
            rows: Vec::new(),
        }
    }

    /// Reduces `v` against the rows; if nonzero remains, stores it and
    /// returns true (the vector was independent).
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        loop {
            let Some(lead) = v.iter().position(|&x| x != 0) else {
                return false;
            };
            match self.rows.iter().find(|(pivot, _)| *pivot == lead) {
                Some((_, row)) => {
                    let factor = v[lead];
                    for i in lead..self.width {
                        v[i] = (v[i] + (p - factor) * row[i]) % p;
                    }
                }
                None => {
                    let inv = mod_inv_u64(v[lead], p);
                    for x in v.iter_mut() {
                        *x = (*x * inv) % p;
                    }
                    self.rows.push((lead, v));
                    return true;
                }
            }
        }
    }
}

pub(crate) fn mod_inv_u64(a: u64, p: u64) -> u64 {
    // p is prime and small; Fermat.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}
