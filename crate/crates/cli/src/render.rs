//! Text rendering of tower elements and polynomials in the expression
//! syntax, so that printed values parse back to equal elements.

use hensel_core::{Element, Poly, Rational};
use num_traits::{One, Signed, Zero};

/// Names of the level generators, indexed by level minus one.
#[derive(Debug, Clone, Copy)]
pub struct Names<'a>(pub &'a [String]);

impl Names<'_> {
    fn generator(&self, level: usize) -> &str {
        &self.0[level - 1]
    }
}

pub fn rational(q: &Rational) -> String {
    q.to_string()
}

pub fn element(e: &Element, names: Names<'_>) -> String {
    match e {
        Element::Rat(q) => rational(q),
        Element::Ext(f) => {
            let var = names.generator(f.level());
            let num = poly(f.num(), var, names);
            match f.den().coeffs() {
                [Element::Rat(one)] if one.is_one() => num,
                _ => format!("{}/{}", wrap(num), wrap(poly(f.den(), var, names))),
            }
        }
    }
}

fn wrap(s: String) -> String {
    if s.chars().all(|c| c.is_alphanumeric() || c == '_') {
        s
    } else {
        format!("({s})")
    }
}

/// `true` when the rendering of `e` needs no parentheses as a factor.
fn is_atomic(e: &Element, names: Names<'_>) -> bool {
    match e {
        Element::Rat(q) => q.is_integer() && !q.is_negative(),
        Element::Ext(_) => {
            let s = element(e, names);
            s.chars().all(|c| c.is_alphanumeric() || c == '_')
        }
    }
}

pub fn poly(p: &Poly<Element>, var: &str, names: Names<'_>) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        let (negative, magnitude) = match c {
            Element::Rat(q) if q.is_zero() => continue,
            Element::Rat(q) => (q.is_negative(), Element::Rat(q.abs())),
            Element::Ext(_) => (false, c.clone()),
        };
        out.push_str(match (out.is_empty(), negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        let rendered = element(&magnitude, names);
        let factor = match &magnitude {
            Element::Rat(q) if k == 0 || q.is_integer() => rendered,
            _ if is_atomic(&magnitude, names) => rendered,
            _ => format!("({rendered})"),
        };
        let power = match k {
            0 => {
                out.push_str(&factor);
                continue;
            }
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if !matches!(&magnitude, Element::Rat(q) if q.is_one()) {
            out.push_str(&factor);
            out.push('*');
        }
        out.push_str(&power);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
