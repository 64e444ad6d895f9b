//! Sheaf and separation conditions for the topologies generated by
//! distinguished pushout squares.
//!
//! A [`Site`] is a category with a list of declared pushout squares. The
//! topology `j` is generated by the families `{g, n}` of those squares; `k`
//! adds the families `{δ, m₂}` built from the kernel pairs of `f` and `g`,
//! together with all their pullbacks. Only the families needed for a check
//! are built, and pullbacks are taken along the probes of the site (every
//! arrow, for a presentation).

pub mod check;
pub mod demo;
pub mod embed;

use std::cell::OnceCell;
use std::hash::Hash;

use serde_json::{json, Value};

use crate::category::Category;
use crate::colimit::{kernel_pair, KernelPair};
use crate::diagram::Square;
use crate::error::{CatError, Result};
use crate::presentation::Presentation;
use crate::probe::probes_into;
use crate::universal::pushout_holds;

pub use check::{is_j_sheaf, is_k_separated, simplified_sheaf_check};
pub use embed::embedding_report;

/// Kernel-pair data of one declared square `(m, f, g, n)`.
#[derive(Debug, Clone)]
pub struct SquareKernels<M> {
    /// `(g₁, g₂)` and the diagonal `δ: A → A₂`.
    pub kernel_g: KernelPair<M>,
    /// `(f₁, f₂)`, the diagonal `γ: C → C₂`, and the induced `m₂: C₂ → A₂`.
    pub kernel_f: Option<(KernelPair<M>, M)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// `{g, n}` of declared square `i`.
    JBasic(usize),
    /// `{δ, m₂}` of declared square `i`.
    KBasic(usize),
}

#[derive(Debug, Clone)]
pub struct CoveringFamily<M> {
    pub members: Vec<M>,
    pub origin: Origin,
    /// The probe the basic family was pulled back along, if any.
    pub along: Option<M>,
}

impl<M> CoveringFamily<M> {
    pub fn to_json<C: Category<Mor = M>>(&self, cat: &C) -> Value {
        let (kind, square) = match self.origin {
            Origin::JBasic(i) => ("j-basic {g,n}", i),
            Origin::KBasic(i) => ("k-basic {m2,delta}", i),
        };
        let mut v = json!({
            "origin": kind,
            "square": square,
            "members": self.members.iter().map(|h| cat.mor_to_json(h)).collect::<Vec<_>>(),
        });
        if let Some(h) = &self.along {
            v["pulled_back_along"] = cat.mor_to_json(h);
        }
        v
    }
}

/// Families of one topology together with the number of pullbacks the site
/// could not form.
#[derive(Debug, Clone)]
pub struct Families<M> {
    pub families: Vec<CoveringFamily<M>>,
    pub unavailable: usize,
}

pub struct Site<C: Category> {
    pub cat: C,
    pub squares: Vec<Square<C::Mor>>,
    /// Names of admissible arrows, when the site was given an explicit list.
    pub admissible: Option<Vec<C::Mor>>,
    /// Probe bound for pullback closure.
    pub bound: usize,
    /// Kernel-pair objects larger than this are reported as overflow.
    pub closure_cap: Option<usize>,
    kernels: Vec<OnceCell<Result<SquareKernels<C::Mor>>>>,
    j: OnceCell<Result<Families<C::Mor>>>,
    k: OnceCell<Result<Families<C::Mor>>>,
}

impl<C: Category> Site<C>
where
    C::Mor: Eq + Hash,
{
    /// Validates each square: it commutes, it is a pushout, and `m` is
    /// admissible.
    pub fn new(
        cat: C,
        squares: Vec<Square<C::Mor>>,
        admissible: impl Fn(&C, &C::Mor) -> bool,
        bound: usize,
    ) -> Result<Self> {
        for (i, sq) in squares.iter().enumerate() {
            sq.check(&cat).map_err(|e| CatError::InvalidSquare(format!("square {i}: {e}")))?;
            if !admissible(&cat, &sq.m) {
                return Err(CatError::InvalidSquare(format!("square {i}: m is not admissible")));
            }
            if !pushout_holds(&cat, sq).map_err(|e| CatError::InvalidSquare(format!("square {i}: {e}")))? {
                return Err(CatError::InvalidSquare(format!("square {i} is not a pushout")));
            }
        }
        Ok(Site::unchecked(cat, squares, bound))
    }

    /// A site whose squares are known to be admissible pushouts.
    pub fn unchecked(cat: C, squares: Vec<Square<C::Mor>>, bound: usize) -> Self {
        let kernels = squares.iter().map(|_| OnceCell::new()).collect();
        Site {
            cat,
            squares,
            admissible: None,
            bound,
            closure_cap: None,
            kernels,
            j: OnceCell::new(),
            k: OnceCell::new(),
        }
    }

    pub fn with_closure_cap(mut self, cap: usize) -> Self {
        self.closure_cap = Some(cap);
        self
    }

    fn within_cap(&self, x: &C::Obj, what: &str) -> Result<()> {
        match self.closure_cap {
            Some(cap) if self.cat.size(x) > cap => {
                Err(CatError::ClosureOverflow(format!("{what} has size {} > {cap}", self.cat.size(x))))
            }
            _ => Ok(()),
        }
    }

    fn name(&self, f: &C::Mor) -> String {
        match self.cat.mor_to_json(f) {
            Value::String(s) => s,
            other => other.to_string(),
        }
    }

    fn compute_kernels(&self, i: usize) -> Result<SquareKernels<C::Mor>> {
        let sq = &self.squares[i];
        let missing = |f: &C::Mor| {
            let name = self.name(f);
            move |e: CatError| match e {
                CatError::UnsupportedLimit(_) => CatError::MissingKernelPair(name),
                other => other,
            }
        };
        let kernel_g = kernel_pair(&self.cat, &sq.g).map_err(missing(&sq.g))?;
        self.within_cap(&self.cat.dom(&kernel_g.p1), "kernel pair of g")?;
        let kernel_f = match kernel_pair(&self.cat, &sq.f).map_err(missing(&sq.f)) {
            Ok(kf) => {
                self.within_cap(&self.cat.dom(&kf.p1), "kernel pair of f")?;
                let m2 = self
                    .cat
                    .pullback_lift(
                        &kernel_g.span(),
                        &self.cat.compose(&kf.p1, &sq.m)?,
                        &self.cat.compose(&kf.p2, &sq.m)?,
                    )
                    .ok_or_else(|| CatError::MissingKernelPair(self.name(&sq.g)))?;
                Some((kf, m2))
            }
            Err(CatError::MissingKernelPair(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(SquareKernels { kernel_g, kernel_f })
    }

    pub fn kernels(&self, i: usize) -> Result<&SquareKernels<C::Mor>> {
        self.kernels[i].get_or_init(|| self.compute_kernels(i)).as_ref().map_err(Clone::clone)
    }

    /// `(δ, m₂)` of square `i`; `MissingKernelPair` when `f` has none.
    pub fn delta_m2(&self, i: usize) -> Result<(C::Mor, C::Mor)> {
        let k = self.kernels(i)?;
        let (_, m2) = k.kernel_f.as_ref().ok_or_else(|| CatError::MissingKernelPair(self.name(&self.squares[i].f)))?;
        Ok((k.kernel_g.diagonal.clone(), m2.clone()))
    }

    /// Adds `basic` and its pullbacks along every non-identity probe into its
    /// codomain.
    fn close(&self, basic: Vec<C::Mor>, origin: Origin, out: &mut Families<C::Mor>) -> Result<()> {
        let target = self.cat.cod(&basic[0]);
        let id = self.cat.identity(&target);
        out.families.push(CoveringFamily { members: basic.clone(), origin, along: None });
        for h in probes_into(&self.cat, &target, self.bound)? {
            if h == id {
                continue;
            }
            let mut members = Vec::with_capacity(basic.len());
            for b in &basic {
                match self.cat.pullback(b, &h) {
                    Ok(pb) => members.push(pb.right),
                    Err(CatError::UnsupportedLimit(_)) => break,
                    Err(e) => return Err(e),
                }
            }
            if members.len() == basic.len() {
                out.families.push(CoveringFamily { members, origin, along: Some(h) });
            } else {
                out.unavailable += 1;
            }
        }
        Ok(())
    }

    fn compute_j(&self) -> Result<Families<C::Mor>> {
        let mut out = Families { families: Vec::new(), unavailable: 0 };
        for (i, sq) in self.squares.iter().enumerate() {
            self.close(vec![sq.g.clone(), sq.n.clone()], Origin::JBasic(i), &mut out)?;
        }
        Ok(out)
    }

    fn compute_k(&self) -> Result<Families<C::Mor>> {
        let mut out = self.j_families()?.clone();
        for i in 0..self.squares.len() {
            let (delta, m2) = self.delta_m2(i)?;
            self.close(vec![m2, delta], Origin::KBasic(i), &mut out)?;
        }
        Ok(out)
    }

    /// One basic family `{g, n}` per declared square, followed by its
    /// pullbacks.
    pub fn j_families(&self) -> Result<&Families<C::Mor>> {
        self.j.get_or_init(|| self.compute_j()).as_ref().map_err(Clone::clone)
    }

    /// The `j` families, then `{m₂, δ}` per square with its pullbacks.
    pub fn k_families(&self) -> Result<&Families<C::Mor>> {
        self.k.get_or_init(|| self.compute_k()).as_ref().map_err(Clone::clone)
    }
}

impl Site<Presentation> {
    /// A presentation with `squares: [{m, f, g, n}]` by arrow id and an
    /// optional `admissible` list of arrow ids. Without the list, the
    /// admissible arrows are the monomorphisms.
    pub fn from_json(v: &Value) -> Result<Self> {
        let cat = Presentation::from_json(v)?;
        let squares = match v.get("squares") {
            None => Vec::new(),
            Some(s) => s
                .as_array()
                .ok_or_else(|| CatError::Parse("`squares` must be an array".into()))?
                .iter()
                .map(|sq| Square::from_json(&cat, sq))
                .collect::<Result<_>>()?,
        };
        let admissible: Option<Vec<usize>> = match v.get("admissible") {
            None => None,
            Some(a) => Some(
                a.as_array()
                    .ok_or_else(|| CatError::Parse("`admissible` must be an array".into()))?
                    .iter()
                    .map(|x| cat.mor_from_json(x))
                    .collect::<Result<_>>()?,
            ),
        };
        let list = admissible.clone();
        let mut site = Site::new(
            cat,
            squares,
            move |c: &Presentation, m: &usize| match &list {
                Some(l) => l.contains(m),
                None => c.is_mono(m),
            },
            0,
        )?;
        site.admissible = admissible;
        Ok(site)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.cat.to_json();
        v["squares"] = json!(self.squares.iter().map(|s| s.to_json(&self.cat)).collect::<Vec<_>>());
        if let Some(a) = &self.admissible {
            v["admissible"] = json!(a.iter().map(|m| self.cat.mor_to_json(m)).collect::<Vec<_>>());
        }
        v
    }
}
