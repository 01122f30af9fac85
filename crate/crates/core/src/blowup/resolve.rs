use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::report::{
    BlowupEvent, ChainRecord, ChartRecord, Corner, DivisorComponent, IndexDropEvent, ResolutionReport, Status,
};
use super::{blow_up_into, BlowupResult};
use crate::algebra::{factor_univariate, AlgebraicPoint, BiPoly, ChartId, Coordinate, Field, NumberField, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::foliation::{classify, cs_index, Axis, FoliationForm, SingularClass, SingularityRecord};

pub const DEFAULT_BUDGET: usize = 64;

#[derive(Clone, Debug)]
pub struct ResolveOptions {
    /// Maximum number of point blow-ups.
    pub budget: usize,
    /// Adjoin a root when a point on the divisor is not rational.
    pub allow_extensions: bool,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions { budget: DEFAULT_BUDGET, allow_extensions: false }
    }
}

/// Local form at a point together with the divisor components along its axes.
#[derive(Clone, Debug)]
struct Germ {
    fol: FoliationForm<Scalar>,
    on_y0: Option<usize>,
    on_x0: Option<usize>,
}

impl Germ {
    fn axis_of(&self, comp: usize) -> Option<Axis> {
        if self.on_y0 == Some(comp) {
            Some(Axis::Y0)
        } else if self.on_x0 == Some(comp) {
            Some(Axis::X0)
        } else {
            None
        }
    }

    fn components(&self) -> Vec<usize> {
        self.on_y0.into_iter().chain(self.on_x0).collect()
    }
}

struct Active {
    rec: SingularityRecord<Scalar>,
    germ: Germ,
}

struct Engine {
    opts: ResolveOptions,
    components: Vec<DivisorComponent>,
    active: BTreeMap<usize, Active>,
    history: Vec<BlowupEvent>,
    charts: Vec<ChartRecord>,
    chains: Vec<ChainRecord>,
    drops: Vec<IndexDropEvent>,
    next_id: usize,
    current_chain: Option<usize>,
}

struct Outcome {
    component: usize,
    /// Old component to the corner it now shares with the new one.
    corners: BTreeMap<usize, usize>,
}

/// Resolves the singularity of `a dx + b dy` at the origin.
///
/// Always returns a report; `status` says whether it is complete. The only
/// error is an input that defines no foliation.
pub fn resolve(a: &BiPoly<Scalar>, b: &BiPoly<Scalar>, opts: &ResolveOptions) -> Result<ResolutionReport> {
    let (fol, _) = FoliationForm::new(a.clone(), b.clone(), ChartId::origin())?;
    let mut eng = Engine {
        opts: opts.clone(),
        components: Vec::new(),
        active: BTreeMap::new(),
        history: Vec::new(),
        charts: Vec::new(),
        chains: Vec::new(),
        drops: Vec::new(),
        next_id: 0,
        current_chain: None,
    };
    let (status, message) = match eng.run(fol) {
        Ok(()) => (Status::Resolved, None),
        Err(Error::BudgetExceeded(n)) => (Status::BudgetExceeded, Some(format!("stopped after {n} blow-ups"))),
        Err(Error::UnsupportedField(m)) => (Status::UnsupportedField, Some(m)),
        Err(e) => return Err(e),
    };
    Ok(eng.finish([a.clone(), b.clone()], status, message))
}

impl Engine {
    fn run(&mut self, fol: FoliationForm<Scalar>) -> Result<()> {
        let germ = Germ { fol, on_y0: None, on_x0: None };
        let id = self.add_point(germ, AlgebraicPoint::origin(ChartId::origin()), 1)?;
        if !self.active[&id].rec.class.is_singular() {
            self.active.remove(&id);
            return Ok(());
        }
        self.blow_up_point(id)?;
        let mut round = 1;
        loop {
            let mut tau: Vec<(usize, usize)> = self
                .active
                .values()
                .filter(|p| !p.rec.corner && self.needs_blowup(&p.rec))
                .map(|p| (p.rec.components.iter().copied().min().unwrap_or(0), p.rec.id))
                .collect();
            tau.sort();
            if tau.is_empty() {
                // corners are handled inside chains; anything left is blown up directly
                let stray = self.active.values().find(|p| self.needs_blowup(&p.rec)).map(|p| p.rec.id);
                match stray {
                    Some(id) => {
                        self.blow_up_point(id)?;
                        continue;
                    }
                    None => return Ok(()),
                }
            }
            for (_, r) in tau {
                if self.active.contains_key(&r) {
                    self.run_chain(r, round)?;
                }
            }
            round += 1;
        }
    }

    fn needs_blowup(&self, rec: &SingularityRecord<Scalar>) -> bool {
        match rec.class {
            SingularClass::NotIrreducible | SingularClass::Tangency => true,
            c if c.is_singular() => rec.components.iter().any(|&k| self.components[k - 1].dicritical),
            _ => false,
        }
    }

    fn run_chain(&mut self, r: usize, round: usize) -> Result<()> {
        let rec = self.active[&r].rec.clone();
        let parent = rec.components[0];
        let id = self.chains.len();
        self.current_chain = Some(id);
        let parent_chain = self.chains.iter().find(|c| c.components.contains(&parent)).map(|c| c.id);
        self.chains.push(ChainRecord {
            id,
            round,
            origin: r,
            origin_location: rec.location.clone(),
            parent,
            parent_chain,
            components: Vec::new(),
            n_r: 0,
            origin_pre_index: rec.indices.get(&parent).cloned(),
            weights_at_completion: BTreeMap::new(),
        });
        let mut cur = r;
        loop {
            let out = self.blow_up_point(cur)?;
            let chain = &mut self.chains[id];
            chain.components.push(out.component);
            chain.n_r += 1;
            let corner = out.corners[&parent];
            if self.needs_blowup(&self.active[&corner].rec) {
                cur = corner;
            } else {
                break;
            }
        }
        loop {
            let chain = &self.chains[id];
            let next = self.active.values().find(|p| {
                p.rec.corner
                    && self.needs_blowup(&p.rec)
                    && p.rec.components.iter().all(|c| *c == parent || chain.components.contains(c))
            });
            match next.map(|p| p.rec.id) {
                Some(c) => {
                    let out = self.blow_up_point(c)?;
                    self.chains[id].components.push(out.component);
                }
                None => break,
            }
        }
        let weights = self.chains[id].components.iter().map(|&c| (c, self.components[c - 1].weight())).collect();
        self.chains[id].weights_at_completion = weights;
        self.current_chain = None;
        Ok(())
    }

    fn add_point(&mut self, germ: Germ, location: AlgebraicPoint<Scalar>, orbit_degree: usize) -> Result<usize> {
        let cls = classify(&germ.fol)?;
        let comps = germ.components();
        let mut class = cls.class;
        if class == SingularClass::Regular {
            let tangent = (germ.on_y0.is_some_and(|c| self.components[c - 1].dicritical)
                && germ.fol.a.constant_term().is_zero())
                || (germ.on_x0.is_some_and(|c| self.components[c - 1].dicritical)
                    && germ.fol.b.constant_term().is_zero());
            if tangent {
                class = SingularClass::Tangency;
            }
        }
        let mut indices = BTreeMap::new();
        let mut flags = BTreeMap::new();
        for &c in &comps {
            if self.components[c - 1].dicritical {
                continue;
            }
            let axis = germ.axis_of(c).expect("component on an axis");
            indices.insert(c, cs_index(&germ.fol, axis, &Scalar::zero())?);
            flags.insert(c, matches!(class, SingularClass::NondegenerateResonant | SingularClass::SaddleNode));
        }
        let strong_separatrix = cls.strong_axis.and_then(|ax| match ax {
            Axis::Y0 => germ.on_y0,
            Axis::X0 => germ.on_x0,
        });
        let id = self.next_id;
        self.next_id += 1;
        let rec = SingularityRecord {
            id,
            location,
            class,
            eigenvalues: cls.eigenvalues,
            ratio: cls.ratio,
            saddle_node_order: cls.saddle_node_order,
            indices,
            resonant_separatrix_flags: flags,
            corner: comps.len() == 2,
            components: comps,
            strong_separatrix,
            orbit_degree,
        };
        self.active.insert(id, Active { rec, germ });
        Ok(id)
    }

    fn blow_up_point(&mut self, id: usize) -> Result<Outcome> {
        if self.history.len() >= self.opts.budget {
            return Err(Error::BudgetExceeded(self.history.len()));
        }
        let Active { rec, germ } = self.active.remove(&id).expect("active point");
        let n = self.components.len() + 1;
        let step = self.history.len() + 1;
        let c1 = ChartId::blowup(n, 1);
        let c2 = ChartId::blowup(n, 2);
        let res: BlowupResult<Scalar> = blow_up_into(&germ.fol, c1.clone(), c2.clone());
        let d = rec.orbit_degree;
        for c in germ.components() {
            let comp = &mut self.components[c - 1];
            comp.self_intersection -= (d / comp.orbit_degree) as i64;
        }
        self.components.push(DivisorComponent {
            id: n,
            self_intersection: -1,
            dicritical: res.dicritical,
            singularities: Vec::new(),
            corners: Vec::new(),
            birth_step: step,
            orbit_degree: d,
            center: id,
        });
        self.charts.push(ChartRecord {
            id: c1.clone(),
            component: n,
            center: rec.location.clone(),
            map: "(x, y) -> (x, x*y)".into(),
        });
        self.charts.push(ChartRecord {
            id: c2.clone(),
            component: n,
            center: rec.location.clone(),
            map: "(x, y) -> (x*y, y)".into(),
        });

        let mut new_points = Vec::new();
        let mut corners = BTreeMap::new();
        // chart 1: E = {x = 0}, parametrized by t
        let along = if res.dicritical { res.chart1.b.restrict_x0() } else { res.chart1.a.restrict_x0() };
        let mut candidates: Vec<UniPoly<Scalar>> = if along.degree().unwrap_or(0) == 0 {
            Vec::new()
        } else {
            factor_univariate(&along)?.into_iter().map(|(f, _)| f).collect()
        };
        let t = UniPoly::new(vec![Scalar::zero(), Scalar::one()]);
        if germ.on_y0.is_some() && !candidates.iter().any(|f| f.degree() == Some(1) && f.coeff(0).is_zero()) {
            candidates.push(t.clone());
        }
        for f in candidates {
            let coord = Coordinate::RootOf(f.clone()).canonical();
            let (tv, ext) = match coord.value() {
                Some(v) => (v, 1),
                None => {
                    if !self.opts.allow_extensions {
                        return Err(Error::UnsupportedField(format!(
                            "points of E{n} are the roots of {f}; rerun with extensions allowed"
                        )));
                    }
                    if germ.fol.a.terms().chain(germ.fol.b.terms()).any(|(_, c)| c.field_degree() > 1) {
                        return Err(Error::UnsupportedField(format!("E{n} needs a second extension, by {f}")));
                    }
                    let rational: Option<Vec<_>> = f.coeffs().iter().map(|c| c.to_rational()).collect();
                    let nf = NumberField::new(&UniPoly::new(rational.expect("coefficients in the base field")));
                    (nf.generator(), f.degree().unwrap_or(1))
                }
            };
            let on_y0 = if tv.is_zero() { germ.on_y0 } else { None };
            let g = Germ { fol: res.chart1.translate(&Scalar::zero(), &tv), on_y0, on_x0: Some(n) };
            let loc = AlgebraicPoint::new(c1.clone(), Coordinate::zero(), coord);
            let pid = self.add_point(g, loc, d * ext)?;
            if let Some(p) = on_y0 {
                corners.insert(p, pid);
            }
            new_points.push(pid);
        }
        // chart 2 origin: the point t = ∞
        let (a2, b2) = (res.chart2.a.constant_term(), res.chart2.b.constant_term());
        let interesting = if res.dicritical { a2.is_zero() } else { b2.is_zero() };
        if interesting || germ.on_x0.is_some() {
            let g = Germ { fol: res.chart2.clone(), on_y0: Some(n), on_x0: germ.on_x0 };
            let pid = self.add_point(g, AlgebraicPoint::origin(c2.clone()), d)?;
            if let Some(p) = germ.on_x0 {
                corners.insert(p, pid);
            }
            new_points.push(pid);
        }

        for (&p, &corner) in &corners {
            if let (Some(pre), Some(post)) = (rec.indices.get(&p), self.active[&corner].rec.indices.get(&p)) {
                self.drops.push(IndexDropEvent {
                    step,
                    component: p,
                    center: id,
                    corner,
                    pre: pre.clone(),
                    post: post.clone(),
                });
            }
        }
        self.history.push(BlowupEvent {
            step,
            component: n,
            center: rec,
            nu: res.nu,
            multiplicity: res.multiplicity,
            dicritical: res.dicritical,
            chain: self.current_chain,
            new_points,
        });
        Ok(Outcome { component: n, corners })
    }

    fn finish(mut self, input: [BiPoly<Scalar>; 2], status: Status, message: Option<String>) -> ResolutionReport {
        for p in self.active.values() {
            for &c in &p.rec.components {
                let comp = &mut self.components[c - 1];
                comp.singularities.push(p.rec.id);
                if p.rec.corner {
                    let other = p.rec.components.iter().copied().find(|&o| o != c).expect("two components");
                    comp.corners.push(Corner { neighbor: other, point: p.rec.id });
                }
            }
        }
        ResolutionReport {
            status,
            message,
            input,
            blowups: self.history.len(),
            components: self.components,
            singularities: self.active.into_values().map(|p| p.rec).collect(),
            history: self.history,
            charts: self.charts,
            chains: self.chains,
            index_drops: self.drops,
        }
    }
}
