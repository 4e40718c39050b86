use serde::Serialize;

use super::{FieldContext, FieldElement};
use crate::error::{Error, Result};
use crate::rng::Sampler;

/// A polynomial self-map of `F_p`.
pub trait PolyMap: Send + Sync {
    fn context(&self) -> &FieldContext;

    /// `f(x)` on a canonical residue.
    fn apply(&self, x: u64) -> u64;

    fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        let ctx = self.context();
        let v = ctx.bind(x)?;
        Ok(ctx.wrap(self.apply(v)))
    }

    /// `f^n(x)` on a canonical residue.
    #[inline]
    fn iterate_raw(&self, mut x: u64, n: u64) -> u64 {
        for _ in 0..n {
            x = self.apply(x);
        }
        x
    }

    fn iterate(&self, x: FieldElement, n: u64) -> Result<FieldElement> {
        let ctx = self.context();
        let v = ctx.bind(x)?;
        Ok(ctx.wrap(self.iterate_raw(v, n)))
    }
}

/// `f(X) = aX^2 + c` with `a != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadMap {
    ctx: FieldContext,
    a: u64,
    c: u64,
}

impl QuadMap {
    /// Coefficients are reduced mod `p`.
    pub fn new(ctx: FieldContext, a: u64, c: u64) -> Result<Self> {
        let a = ctx.modulus().reduce(a);
        if a == 0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(Self {
            ctx,
            a,
            c: ctx.modulus().reduce(c),
        })
    }

    pub fn monic(ctx: FieldContext, c: u64) -> Self {
        Self {
            ctx,
            a: 1,
            c: ctx.modulus().reduce(c),
        }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// `phi(x, y; d)`: `x - y` for `d = -1`, else `f^d(x) + f^d(y)`.
    pub fn phi(&self, x: FieldElement, y: FieldElement, d: i64) -> Result<FieldElement> {
        let (x, y) = (self.ctx.bind(x)?, self.ctx.bind(y)?);
        if d < -1 {
            return Err(Error::InvalidLevel(d));
        }
        Ok(self.ctx.wrap(self.phi_raw(x, y, d)))
    }

    #[inline]
    pub(crate) fn phi_raw(&self, x: u64, y: u64, d: i64) -> u64 {
        if d < 0 {
            self.ctx.sub(x, y)
        } else {
            let d = d as u64;
            self.ctx.add(self.iterate_raw(x, d), self.iterate_raw(y, d))
        }
    }

    /// Critical orbit `f^0(0), ..., f^n(0)`.
    pub fn critical_orbit(&self, n: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(n as usize + 1);
        let mut x = 0;
        out.push(x);
        for _ in 0..n {
            x = self.apply(x);
            out.push(x);
        }
        out
    }
}

impl PolyMap for QuadMap {
    #[inline]
    fn context(&self) -> &FieldContext {
        &self.ctx
    }

    #[inline]
    fn apply(&self, x: u64) -> u64 {
        let sq = self.ctx.mul(x, x);
        let t = if self.a == 1 { sq } else { self.ctx.mul(self.a, sq) };
        self.ctx.add(t, self.c)
    }
}

/// `g(X) = X^3 + c` over a field with `p = 2 mod 3`, where it is a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CubicMap {
    ctx: FieldContext,
    c: u64,
}

impl CubicMap {
    pub fn new(ctx: FieldContext, c: u64) -> Result<Self> {
        if ctx.p() % 3 != 2 {
            return Err(Error::NotCubicPermutation(ctx.p()));
        }
        Ok(Self {
            ctx,
            c: ctx.modulus().reduce(c),
        })
    }

    pub fn c(&self) -> u64 {
        self.c
    }
}

impl PolyMap for CubicMap {
    #[inline]
    fn context(&self) -> &FieldContext {
        &self.ctx
    }

    #[inline]
    fn apply(&self, x: u64) -> u64 {
        let sq = self.ctx.mul(x, x);
        self.ctx.add(self.ctx.mul(sq, x), self.c)
    }
}

/// `f(X) = aX^2 + bX + c` with `a != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneralQuadratic {
    ctx: FieldContext,
    a: u64,
    b: u64,
    c: u64,
}

impl GeneralQuadratic {
    pub fn new(ctx: FieldContext, a: u64, b: u64, c: u64) -> Result<Self> {
        let m = ctx.modulus();
        let a = m.reduce(a);
        if a == 0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(Self {
            ctx,
            a,
            b: m.reduce(b),
            c: m.reduce(c),
        })
    }
}

impl PolyMap for GeneralQuadratic {
    fn context(&self) -> &FieldContext {
        &self.ctx
    }

    #[inline]
    fn apply(&self, x: u64) -> u64 {
        let k = &self.ctx;
        let ax_b = k.add(k.mul(self.a, x), self.b);
        k.add(k.mul(ax_b, x), self.c)
    }
}

/// Conjugates `aX^2 + bX + c` by the translation `X -> X + d`, `d = -b/(2a)`.
///
/// Returns `g(X) = f(X + d) - d = aX^2 + c'` together with `d`. The
/// functional graph of `g` is that of `f` with each vertex `m` relabelled as
/// `m - d`.
pub fn translate_general_quadratic(
    ctx: FieldContext,
    a: u64,
    b: u64,
    c: u64,
) -> Result<(QuadMap, FieldElement)> {
    let f = GeneralQuadratic::new(ctx, a, b, c)?;
    let two_a = ctx.add(f.a, f.a);
    let inv = ctx.inv(two_a).ok_or(Error::ZeroLeadingCoefficient)?;
    let d = ctx.neg(ctx.mul(f.b, inv));
    let c_prime = ctx.sub(f.apply(d), d);
    let g = QuadMap::new(ctx, f.a, c_prime)?;
    Ok((g, ctx.wrap(d)))
}

/// Which form of `f^r(X) - f^r(Y) = (X - Y) prod_{j<r} (f^j(X) + f^j(Y))`
/// is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorizationMode {
    /// Both sides equal as field values (monic maps).
    Exact,
    /// Both sides vanish together (any leading coefficient).
    VanishingSet,
}

impl FactorizationMode {
    pub fn for_map(f: &QuadMap) -> Self {
        if f.a == 1 {
            Self::Exact
        } else {
            Self::VanishingSet
        }
    }
}

/// Largest prime checked on the full `p x p` grid.
pub const FULL_GRID_MAX_P: u64 = 1000;
const DEFAULT_SAMPLES: usize = 20_000;

/// Checks the difference factorization of `f^r` at every pair when
/// `p <= 1000`, otherwise at a fixed seeded sample of pairs.
pub fn verify_factorization(f: &QuadMap, r: u32) -> bool {
    if f.ctx.p() <= FULL_GRID_MAX_P {
        let p = f.ctx.p();
        (0..p).all(|x| (0..p).all(|y| factorization_holds(f, r, x, y)))
    } else {
        verify_factorization_sampled(f, r, DEFAULT_SAMPLES, 0)
    }
}

/// As [`verify_factorization`] on `samples` seeded random pairs.
pub fn verify_factorization_sampled(f: &QuadMap, r: u32, samples: usize, seed: u64) -> bool {
    let mut rng = Sampler::new(seed);
    let p = f.ctx.p();
    (0..samples).all(|_| {
        let x = rng.below(p);
        let y = rng.below(p);
        factorization_holds(f, r, x, y)
    })
}

fn factorization_holds(f: &QuadMap, r: u32, x: u64, y: u64) -> bool {
    let (lhs, rhs) = factorization_sides(f, r, x, y);
    match FactorizationMode::for_map(f) {
        FactorizationMode::Exact => lhs == rhs,
        FactorizationMode::VanishingSet => (lhs == 0) == (rhs == 0),
    }
}

/// `(f^r(x) - f^r(y), (x - y) prod_{j<r} (f^j(x) + f^j(y)))`.
pub(crate) fn factorization_sides(f: &QuadMap, r: u32, x: u64, y: u64) -> (u64, u64) {
    let k = &f.ctx;
    let (mut fx, mut fy) = (x, y);
    let mut prod = k.sub(x, y);
    for _ in 0..r {
        prod = k.mul(prod, k.add(fx, fy));
        fx = f.apply(fx);
        fy = f.apply(fy);
    }
    (k.sub(fx, fy), prod)
}
