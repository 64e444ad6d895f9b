//! Commuting squares and cubes.
//!
//! A square is always read as
//!
//! ```text
//!     C --f--> B
//!     |        |
//!     m        n
//!     v        v
//!     A --g--> D
//! ```
//!
//! so it commutes when `n ∘ f = g ∘ m`; pushouts are taken along `m` and the
//! pullback corner is `C`. A cube has a bottom square over `C, A, B, D`, a top
//! square over `C', A', B', D'`, and vertical maps `a, b, c, d` from the top
//! corners to the bottom ones.

use serde_json::{json, Value};

use crate::category::Category;
use crate::error::{CatError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square<M> {
    pub m: M,
    pub f: M,
    pub g: M,
    pub n: M,
}

impl<M: Clone + PartialEq> Square<M> {
    pub fn new(m: M, f: M, g: M, n: M) -> Self {
        Square { m, f, g, n }
    }

    /// Reflect across the diagonal through `C` and `D`.
    pub fn transpose(&self) -> Self {
        Square { m: self.f.clone(), f: self.m.clone(), g: self.n.clone(), n: self.g.clone() }
    }

    /// Fails with `NotComposable` when edges do not meet, and with
    /// `InvalidSquare` when the square does not commute.
    pub fn check<C: Category<Mor = M>>(&self, cat: &C) -> Result<()> {
        let meets = cat.dom(&self.m) == cat.dom(&self.f)
            && cat.cod(&self.m) == cat.dom(&self.g)
            && cat.cod(&self.f) == cat.dom(&self.n)
            && cat.cod(&self.g) == cat.cod(&self.n);
        if !meets {
            return Err(CatError::NotComposable("square edges do not meet".into()));
        }
        if cat.compose(&self.m, &self.g)? != cat.compose(&self.f, &self.n)? {
            return Err(CatError::InvalidSquare("square does not commute".into()));
        }
        Ok(())
    }

    pub fn to_json<C: Category<Mor = M>>(&self, cat: &C) -> Value {
        json!({
            "m": cat.mor_to_json(&self.m),
            "f": cat.mor_to_json(&self.f),
            "g": cat.mor_to_json(&self.g),
            "n": cat.mor_to_json(&self.n),
        })
    }

    pub fn from_json<C: Category<Mor = M>>(cat: &C, v: &Value) -> Result<Self> {
        let edge = |k: &str| {
            v.get(k)
                .ok_or_else(|| CatError::Parse(format!("square is missing edge `{k}`")))
                .and_then(|e| cat.mor_from_json(e))
        };
        Ok(Square { m: edge("m")?, f: edge("f")?, g: edge("g")?, n: edge("n")? })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube<M> {
    pub bottom: Square<M>,
    pub top: Square<M>,
    pub a: M,
    pub b: M,
    pub c: M,
    pub d: M,
}

impl<M: Clone + PartialEq> Cube<M> {
    /// `C' → A'` over `C → A`.
    pub fn left(&self) -> Square<M> {
        Square::new(self.top.m.clone(), self.c.clone(), self.a.clone(), self.bottom.m.clone())
    }

    /// `C' → B'` over `C → B`.
    pub fn back(&self) -> Square<M> {
        Square::new(self.c.clone(), self.top.f.clone(), self.bottom.f.clone(), self.b.clone())
    }

    /// `A' → D'` over `A → D`.
    pub fn front(&self) -> Square<M> {
        Square::new(self.a.clone(), self.top.g.clone(), self.bottom.g.clone(), self.d.clone())
    }

    /// `B' → D'` over `B → D`.
    pub fn right(&self) -> Square<M> {
        Square::new(self.b.clone(), self.top.n.clone(), self.bottom.n.clone(), self.d.clone())
    }

    pub fn check<C: Category<Mor = M>>(&self, cat: &C) -> Result<()> {
        for face in [&self.bottom, &self.top, &self.left(), &self.back(), &self.front(), &self.right()] {
            face.check(cat)?;
        }
        Ok(())
    }

    pub fn to_json<C: Category<Mor = M>>(&self, cat: &C) -> Value {
        json!({
            "bottom": self.bottom.to_json(cat),
            "top": self.top.to_json(cat),
            "a": cat.mor_to_json(&self.a),
            "b": cat.mor_to_json(&self.b),
            "c": cat.mor_to_json(&self.c),
            "d": cat.mor_to_json(&self.d),
        })
    }

    pub fn from_json<C: Category<Mor = M>>(cat: &C, v: &Value) -> Result<Self> {
        let get = |k: &str| v.get(k).ok_or_else(|| CatError::Parse(format!("cube is missing `{k}`")));
        Ok(Cube {
            bottom: Square::from_json(cat, get("bottom")?)?,
            top: Square::from_json(cat, get("top")?)?,
            a: cat.mor_from_json(get("a")?)?,
            b: cat.mor_from_json(get("b")?)?,
            c: cat.mor_from_json(get("c")?)?,
            d: cat.mor_from_json(get("d")?)?,
        })
    }
}
