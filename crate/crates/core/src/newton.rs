//! Newton polygons and the valuations of roots they encode.
//!
//! The polygon of `P = sum p_i X^i` is the lower convex hull of the points
//! `(i, v(p_i))`. Consecutive vertices `(i, w_i)`, `(j, w_j)` account for
//! exactly `j - i` roots of valuation `(w_i - w_j) / (j - i)`. Points with
//! value infinity never become vertices; a leading run of `h` zero
//! coefficients is the root `0` with multiplicity `h`.
//!
//! Tie convention: points lying exactly on a segment are not vertices.

use alloc::vec::Vec;

use crate::field::Rational;
use crate::poly::Poly;
use crate::value::Val;
use crate::valued::ValuedField;
use crate::Error;

/// Ascending multiset of root valuations, `Infinity` last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootValuations(Vec<Val>);

impl RootValuations {
    pub fn from_unsorted(mut vals: Vec<Val>) -> Self {
        vals.sort();
        RootValuations(vals)
    }

    pub fn as_slice(&self) -> &[Val] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Val> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Self {
        let mut vals = self.0.clone();
        vals.extend(other.0.iter().cloned());
        Self::from_unsorted(vals)
    }
}

/// One edge of the hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    /// Valuation shared by the `end - start` roots this edge accounts for.
    pub root_val: Rational,
}

impl Segment {
    pub fn width(&self) -> usize {
        self.end - self.start
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    points: Vec<Val>,
    vertices: Vec<(usize, Rational)>,
    zero_root_width: usize,
}

fn slope(a: (usize, &Rational), b: (usize, &Rational)) -> Rational {
    (b.1 - a.1) / Rational::from_integer((b.0 as i64 - a.0 as i64).into())
}

impl NewtonPolygon {
    /// Polygon of the valuation list `[v(p_0), ..., v(p_d)]`.
    ///
    /// Trailing infinite entries are dropped, so the last point is the true
    /// leading coefficient. Fails if every entry is infinite.
    pub fn from_valuations(mut points: Vec<Val>) -> Result<Self, Error> {
        while points.last() == Some(&Val::Infinity) {
            points.pop();
        }
        if points.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let finite: Vec<(usize, &Rational)> =
            points.iter().enumerate().filter_map(|(i, v)| v.finite().map(|q| (i, q))).collect();
        let zero_root_width = finite[0].0;

        let mut vertices = Vec::new();
        let mut cur = 0;
        vertices.push((finite[0].0, finite[0].1.clone()));
        while cur + 1 < finite.len() {
            // Steepest descent from the current vertex; on ties the farthest
            // point wins, so collinear interior points are skipped.
            let mut best = cur + 1;
            let mut best_slope = slope(finite[cur], finite[best]);
            for cand in cur + 2..finite.len() {
                let s = slope(finite[cur], finite[cand]);
                if s <= best_slope {
                    best = cand;
                    best_slope = s;
                }
            }
            vertices.push((finite[best].0, finite[best].1.clone()));
            cur = best;
        }
        Ok(NewtonPolygon { points, vertices, zero_root_width })
    }

    pub fn of_poly<F: ValuedField>(field: &F, p: &Poly<F::Elem>) -> Result<Self, Error> {
        Self::from_valuations(p.coeffs().iter().map(|c| field.val(c)).collect())
    }

    /// `[v(p_0), ..., v(p_d)]` with `p_d != 0`.
    pub fn points(&self) -> &[Val] {
        &self.points
    }

    pub fn vertices(&self) -> &[(usize, Rational)] {
        &self.vertices
    }

    /// Multiplicity of `0` as a root.
    pub fn zero_root_width(&self) -> usize {
        self.zero_root_width
    }

    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    pub fn segments(&self) -> Vec<Segment> {
        self.vertices
            .windows(2)
            .map(|w| {
                let (i, ref wi) = w[0];
                let (j, ref wj) = w[1];
                Segment { start: i, end: j, root_val: -slope((i, wi), (j, wj)) }
            })
            .collect()
    }

    pub fn root_valuations(&self) -> RootValuations {
        let mut vals = Vec::with_capacity(self.degree());
        for s in self.segments() {
            vals.extend(core::iter::repeat_n(Val::Finite(s.root_val.clone()), s.width()));
        }
        vals.extend(core::iter::repeat_n(Val::Infinity, self.zero_root_width));
        RootValuations::from_unsorted(vals)
    }

    /// Width-one edges as `(k, v(p_k) - v(p_{k+1}))`, ordered by `k`.
    ///
    /// A simple root `0` (a single leading zero coefficient) is reported as
    /// `(0, Infinity)`: it is the infinite-slope edge of width one.
    pub fn isolated_segments(&self) -> Vec<(usize, Val)> {
        let mut out = Vec::new();
        if self.zero_root_width == 1 {
            out.push((0, Val::Infinity));
        }
        out.extend(self.segments().into_iter().filter(|s| s.width() == 1).map(|s| (s.start, Val::Finite(s.root_val))));
        out
    }

    /// Root valuation of the width-one edge starting at `k`, if there is one.
    pub fn isolated_at(&self, k: usize) -> Option<Val> {
        self.isolated_segments().into_iter().find(|(i, _)| *i == k).map(|(_, v)| v)
    }
}

pub fn root_valuations<F: ValuedField>(field: &F, p: &Poly<F::Elem>) -> Result<RootValuations, Error> {
    Ok(NewtonPolygon::of_poly(field, p)?.root_valuations())
}
