//! Continuous piecewise-linear fuzzy sets on the unit interval with rational
//! breakpoints.
//!
//! A set is stored as its breakpoints `(x, y)`, with `x` strictly increasing
//! from 0 to 1. Membership between neighbours is linear interpolation. The
//! stored form is canonical: no interior breakpoint is collinear with its
//! neighbours, so structural equality coincides with pointwise equality.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::degree::Degree;
use crate::error::{Error, Result};

type Q = Ratio<i64>;
/// Intermediate arithmetic is widened; only stored breakpoints must fit `i64`.
type W = Ratio<i128>;

fn wide(d: Degree) -> W {
    W::new_raw(d.numer() as i128, d.denom() as i128)
}

fn narrow(w: W) -> Result<Degree> {
    let (n, d) = (i64::try_from(*w.numer()), i64::try_from(*w.denom()));
    match (n, d) {
        (Ok(n), Ok(d)) => Degree::from_ratio(Ratio::new_raw(n, d)),
        _ => Err(Error::Overflow),
    }
}

fn add(a: W, b: W) -> Result<W> {
    a.checked_add(&b).ok_or(Error::Overflow)
}

fn sub(a: W, b: W) -> Result<W> {
    a.checked_sub(&b).ok_or(Error::Overflow)
}

fn mul(a: W, b: W) -> Result<W> {
    a.checked_mul(&b).ok_or(Error::Overflow)
}

fn div(a: W, b: W) -> Result<W> {
    a.checked_div(&b).ok_or(Error::Overflow)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlFuzzySet {
    points: Vec<(Degree, Degree)>,
}

impl PlFuzzySet {
    /// Builds a set from breakpoints, validating and canonicalizing them.
    pub fn new(points: Vec<(Degree, Degree)>) -> Result<Self> {
        let (first, last) = match (points.first(), points.last()) {
            (Some(f), Some(l)) if points.len() >= 2 => (f.0, l.0),
            _ => return Err(Error::BadBreakpoints("at least two breakpoints are required".into())),
        };
        if first != Degree::ZERO || last != Degree::ONE {
            return Err(Error::BadBreakpoints("breakpoints must start at x=0 and end at x=1".into()));
        }
        if let Some(w) = points.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::BadBreakpoints(format!(
                "x-coordinates must be strictly increasing ({} then {})",
                w[0].0, w[1].0
            )));
        }
        canonical(points)
    }

    pub fn constant(value: Degree) -> Self {
        PlFuzzySet {
            points: vec![(Degree::ZERO, value), (Degree::ONE, value)],
        }
    }

    pub fn zero() -> Self {
        Self::constant(Degree::ZERO)
    }

    pub fn one() -> Self {
        Self::constant(Degree::ONE)
    }

    pub fn breakpoints(&self) -> &[(Degree, Degree)] {
        &self.points
    }

    /// Exact membership at `x`.
    pub fn eval(&self, x: Q) -> Result<Degree> {
        if x < Q::zero() || x > Q::from_integer(1) {
            return Err(Error::OutsideDomain {
                x: crate::degree::format_ratio(&x),
            });
        }
        let idx = self.points.partition_point(|(px, _)| px.ratio() < x);
        let (x1, y1) = self.points[idx];
        if x1.ratio() == x {
            return Ok(y1);
        }
        let (x0, y0) = self.points[idx - 1];
        let xw = W::new_raw(*x.numer() as i128, *x.denom() as i128);
        narrow(interpolate((wide(x0), wide(y0)), (wide(x1), wide(y1)), xw)?)
    }

    pub fn eval_degree(&self, x: Degree) -> Degree {
        self.eval(x.ratio())
            .expect("a breakpoint-bounded interpolation of degrees stays in [0,1]")
    }

    pub fn complement(&self) -> Self {
        PlFuzzySet {
            points: self.points.iter().map(|&(x, y)| (x, y.complement())).collect(),
        }
    }

    pub fn min(&self, other: &Self) -> Result<Self> {
        self.envelope(other, Ordering::Less)
    }

    pub fn max(&self, other: &Self) -> Result<Self> {
        self.envelope(other, Ordering::Greater)
    }

    /// Pointwise `self <= other`. Both sides are linear on every segment of the
    /// merged partition, so checking the merged breakpoints decides it.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        for x in merged_xs(self, other) {
            if self.eval(x.ratio())? > other.eval(x.ratio())? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self) -> bool {
        self.points.iter().all(|(_, y)| y.is_zero())
    }

    /// Pointwise min (`keep == Less`) or max (`keep == Greater`), including the
    /// exact crossing points where the two sides swap order.
    fn envelope(&self, other: &Self, keep: Ordering) -> Result<Self> {
        let pick = |a: Degree, b: Degree| if a.cmp(&b) == keep { a } else { b };
        let xs = merged_xs(self, other);
        let mut out = Vec::with_capacity(xs.len() * 2);
        let mut prev: Option<(W, W, W)> = None;
        for x in xs {
            let (fx, gx) = (self.eval(x.ratio())?, other.eval(x.ratio())?);
            let diff = sub(wide(fx), wide(gx))?;
            if let Some((px, pf, pdiff)) = prev {
                if (pdiff < W::zero() && diff > W::zero()) || (pdiff > W::zero() && diff < W::zero()) {
                    // f - g is linear on [px, x]; solve (f - g)(cx) = 0.
                    let t = div(pdiff, sub(pdiff, diff)?)?;
                    let cx = add(px, mul(t, sub(wide(x), px)?)?)?;
                    let cy = interpolate((px, pf), (wide(x), wide(fx)), cx)?;
                    out.push((narrow(cx)?, narrow(cy)?));
                }
            }
            out.push((x, pick(fx, gx)));
            prev = Some((wide(x), wide(fx), diff));
        }
        canonical(out)
    }
}

impl fmt::Debug for PlFuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PL[")?;
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        f.write_str("]")
    }
}

/// Serializes as `{"breakpoints": [["x", "y"], ...]}`.
impl Serialize for PlFuzzySet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PlFuzzySet", 1)?;
        st.serialize_field("breakpoints", &self.points)?;
        st.end()
    }
}

fn interpolate((x0, y0): (W, W), (x1, y1): (W, W), x: W) -> Result<W> {
    let slope = div(sub(y1, y0)?, sub(x1, x0)?)?;
    add(y0, mul(slope, sub(x, x0)?)?)
}

fn merged_xs(f: &PlFuzzySet, g: &PlFuzzySet) -> Vec<Degree> {
    let mut xs: Vec<Degree> = f.points.iter().chain(&g.points).map(|p| p.0).collect();
    xs.sort_unstable();
    xs.dedup();
    xs
}

fn collinear(a: (Degree, Degree), b: (Degree, Degree), c: (Degree, Degree)) -> Result<bool> {
    let s1 = div(sub(wide(b.1), wide(a.1))?, sub(wide(b.0), wide(a.0))?)?;
    let s2 = div(sub(wide(c.1), wide(b.1))?, sub(wide(c.0), wide(b.0))?)?;
    Ok(s1 == s2)
}

/// Drops every interior breakpoint that lies on the segment joining its
/// neighbours. Input must already satisfy the domain and ordering invariants.
fn canonical(points: Vec<(Degree, Degree)>) -> Result<PlFuzzySet> {
    let mut kept: Vec<(Degree, Degree)> = Vec::with_capacity(points.len());
    for p in points {
        while kept.len() >= 2 && collinear(kept[kept.len() - 2], kept[kept.len() - 1], p)? {
            kept.pop();
        }
        kept.push(p);
    }
    Ok(PlFuzzySet { points: kept })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> Q {
        crate::degree::parse_rational(text).unwrap()
    }

    fn d(text: &str) -> Degree {
        text.parse().unwrap()
    }

    pub(crate) fn pl(points: &[(&str, &str)]) -> PlFuzzySet {
        PlFuzzySet::new(points.iter().map(|(x, y)| (d(x), d(y))).collect()).unwrap()
    }

    #[test]
    fn rejects_bad_breakpoints() {
        let bad = |pts: &[(&str, &str)]| PlFuzzySet::new(pts.iter().map(|(x, y)| (d(x), d(y))).collect());
        assert!(bad(&[("0", "0")]).is_err());
        assert!(bad(&[("0", "0"), ("1/2", "1")]).is_err());
        assert!(bad(&[("1/4", "0"), ("1", "1")]).is_err());
        assert!(bad(&[("0", "0"), ("1/2", "1"), ("1/2", "0"), ("1", "0")]).is_err());
        assert!(bad(&[("0", "0"), ("3/4", "1"), ("1/2", "0"), ("1", "0")]).is_err());
    }

    #[test]
    fn canonicalizes_collinear_points() {
        let f = pl(&[("0", "0"), ("1/4", "1/4"), ("1/2", "1/2"), ("1", "1")]);
        assert_eq!(f.breakpoints().len(), 2);
        assert_eq!(f, pl(&[("0", "0"), ("1", "1")]));
        let g = pl(&[("0", "1/3"), ("1/3", "1/3"), ("1", "1/3")]);
        assert_eq!(g, PlFuzzySet::constant(d("1/3")));
    }

    #[test]
    fn eval_interpolates_exactly() {
        let f = pl(&[("0", "0"), ("1/3", "1"), ("1", "0")]);
        assert_eq!(f.eval(q("1/6")).unwrap(), d("1/2"));
        assert_eq!(f.eval(q("2/3")).unwrap(), d("1/2"));
        assert_eq!(f.eval(q("1")).unwrap(), Degree::ZERO);
        assert!(matches!(f.eval(q("-1/2")), Err(Error::OutsideDomain { .. })));
        assert!(matches!(f.eval(q("3/2")), Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn crossing_point_is_inserted() {
        let up = pl(&[("0", "0"), ("1", "1")]);
        let down = pl(&[("0", "1"), ("1", "0")]);
        let lo = up.min(&down).unwrap();
        assert_eq!(lo, pl(&[("0", "0"), ("1/2", "1/2"), ("1", "0")]));
        let hi = up.max(&down).unwrap();
        assert_eq!(hi, pl(&[("0", "1"), ("1/2", "1/2"), ("1", "1")]));
    }

    #[test]
    fn crossing_at_irregular_rational() {
        // 2x/3 against 1 - x crosses at x = 3/5, y = 2/5
        let f = pl(&[("0", "0"), ("1", "2/3")]);
        let g = pl(&[("0", "1"), ("1", "0")]);
        let m = f.min(&g).unwrap();
        assert_eq!(m, pl(&[("0", "0"), ("3/5", "2/5"), ("1", "0")]));
    }

    #[test]
    fn touching_without_crossing() {
        let f = pl(&[("0", "0"), ("1/2", "1/2"), ("1", "0")]);
        let g = PlFuzzySet::constant(d("1/2"));
        assert_eq!(f.max(&g).unwrap(), g);
        assert_eq!(f.min(&g).unwrap(), f);
        assert!(f.leq(&g).unwrap());
    }

    #[test]
    fn complement_and_constants() {
        assert_eq!(PlFuzzySet::zero().complement(), PlFuzzySet::one());
        assert!(PlFuzzySet::zero().is_zero());
        assert!(!pl(&[("0", "0"), ("1/2", "0"), ("1", "1/9")]).is_zero());
    }

    #[test]
    fn nested_envelopes_with_large_denominators() {
        let a = pl(&[("0", "0"), ("1/6", "0"), ("3/8", "3/7"), ("4/5", "1/11"), ("5/6", "0"), ("1", "3/4")]);
        let b = pl(&[("0", "1"), ("2/11", "1"), ("3/7", "1/2"), ("7/11", "1/12"), ("1", "2/9")]);
        let c = pl(&[("0", "0"), ("1/2", "3/4"), ("5/7", "1/10"), ("3/4", "1"), ("1", "0")]);
        let lhs = a.min(&b.max(&c).unwrap()).unwrap();
        let rhs = a.min(&b).unwrap().max(&a.min(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
