//! Exact rational points and segment predicates.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Coord = BigRational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(
            BigRational::from_integer(BigInt::from(x)),
            BigRational::from_integer(BigInt::from(y)),
        )
    }

    pub fn ratio(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(
            BigRational::new(xn.into(), xd.into()),
            BigRational::new(yn.into(), yd.into()),
        )
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Coord) -> Point {
        Point::new(&self.x + t * (&other.x - &self.x), &self.y + t * (&other.y - &self.y))
    }
}

/// Sign of the cross product `(b - a) x (c - a)`: `Greater` for a left turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    v.cmp(&Coord::zero())
}

fn cross(ax: &Coord, ay: &Coord, bx: &Coord, by: &Coord) -> Coord {
    ax * by - ay * bx
}

/// True iff `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentIntersection {
    None,
    /// A single common point, with its parameters along the first and the
    /// second segment (both in `[0, 1]`).
    Point {
        at: Point,
        s: Coord,
        t: Coord,
    },
    /// Collinear segments sharing a piece of positive length.
    Overlap,
}

/// Intersection of closed segments `ab` and `cd`. Segments must have
/// positive length.
pub fn intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> SegmentIntersection {
    let (rx, ry) = (&b.x - &a.x, &b.y - &a.y);
    let (qx, qy) = (&d.x - &c.x, &d.y - &c.y);
    let (wx, wy) = (&c.x - &a.x, &c.y - &a.y);
    let denom = cross(&rx, &ry, &qx, &qy);
    if denom.is_zero() {
        if !cross(&wx, &wy, &rx, &ry).is_zero() {
            return SegmentIntersection::None;
        }
        // collinear: project onto the first segment's direction
        let len2 = &rx * &rx + &ry * &ry;
        let t0 = (&wx * &rx + &wy * &ry) / &len2;
        let t1 = ((&d.x - &a.x) * &rx + (&d.y - &a.y) * &ry) / &len2;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let start = lo.max(Coord::zero());
        let end = hi.min(Coord::one());
        return match start.cmp(&end) {
            Ordering::Greater => SegmentIntersection::None,
            Ordering::Less => SegmentIntersection::Overlap,
            Ordering::Equal => {
                let at = a.lerp(b, &start);
                let t = param_on(&at, c, d);
                SegmentIntersection::Point { at, s: start, t }
            }
        };
    }
    let s = cross(&wx, &wy, &qx, &qy) / &denom;
    let t = cross(&wx, &wy, &rx, &ry) / &denom;
    let unit = |v: &Coord| !v.is_negative() && *v <= Coord::one();
    if unit(&s) && unit(&t) {
        SegmentIntersection::Point {
            at: a.lerp(b, &s),
            s,
            t,
        }
    } else {
        SegmentIntersection::None
    }
}

/// Parameter of a point known to lie on segment `cd`.
fn param_on(p: &Point, c: &Point, d: &Point) -> Coord {
    if c.x != d.x {
        (&p.x - &c.x) / (&d.x - &c.x)
    } else {
        (&p.y - &c.y) / (&d.y - &c.y)
    }
}
