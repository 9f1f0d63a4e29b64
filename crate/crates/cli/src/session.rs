//! Command interpreter: one command per line against a growing tower.

use std::collections::BTreeMap;

use hensel_core::hensel::SpecialOutcome;
use hensel_core::oracle::{self, OracleError};
use hensel_core::valued::Primality;
use hensel_core::{
    Element, Error, Field, HenselCode, ImmediateDescription, MobiusForm, NewtonPolygon, Poly, Rational, SpecialPoly,
    Tower, Val, ValuedField,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::expr::{Expr, Parser, SyntaxError, Token};
use crate::render::{self, Names};

/// The polynomial indeterminate; never a binding.
pub const INDETERMINATE: &str = "x";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Failed(String),
}

impl CommandError {
    /// Process exit status for this kind of failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Syntax(_) => 2,
            CommandError::Failed(_) => 1,
        }
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Failed(e.to_string())
    }
}

impl From<OracleError> for CommandError {
    fn from(e: OracleError) -> Self {
        CommandError::Failed(format!("oracle: {e}"))
    }
}

fn failed(msg: impl Into<String>) -> CommandError {
    CommandError::Failed(msg.into())
}

/// Output of one command: a human rendering and a structured one.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub data: Value,
}

struct State {
    tower: Tower,
    bindings: BTreeMap<String, Element>,
    generators: Vec<String>,
}

pub struct Session {
    state: Option<State>,
    precision: u32,
}

impl Default for Session {
    fn default() -> Self {
        Self::new(oracle::DEFAULT_PRECISION)
    }
}

impl Session {
    /// `precision` is the default oracle precision for `check`.
    pub fn new(precision: u32) -> Self {
        Session { state: None, precision }
    }

    pub fn tower(&self) -> Option<&Tower> {
        self.state.as_ref().map(|s| &s.tower)
    }

    pub fn binding(&self, name: &str) -> Option<&Element> {
        self.state.as_ref()?.bindings.get(name)
    }

    /// Renders an element with the session's generator names.
    pub fn render(&self, e: &Element) -> String {
        match &self.state {
            Some(s) => render::element(e, Names(&s.generators)),
            None => render::element(e, Names(&[])),
        }
    }

    /// Parses and evaluates an element expression.
    pub fn eval_element(&self, text: &str) -> Result<Element, CommandError> {
        let state = self.state()?;
        let mut p = Parser::new(text)?;
        let e = p.expr()?;
        p.expect_end()?;
        state.element(&e)
    }

    /// Parses and evaluates a polynomial in `x`.
    pub fn eval_poly(&self, text: &str) -> Result<Poly<Element>, CommandError> {
        let state = self.state()?;
        let mut p = Parser::new(text)?;
        let e = p.expr()?;
        p.expect_end()?;
        state.eval(&e, true)
    }

    fn state(&self) -> Result<&State, CommandError> {
        self.state.as_ref().ok_or_else(|| failed("no field defined; start with `field Q <p>`"))
    }

    /// Runs one line. Blank lines and `#` comments yield `None`.
    pub fn execute(&mut self, line: &str) -> Result<Option<Report>, CommandError> {
        let code = line.split('#').next().unwrap_or("");
        if code.trim().is_empty() {
            return Ok(None);
        }
        let mut p = Parser::new(code)?;
        let command = p.ident()?;
        let report = match command.as_str() {
            "field" => self.field(&mut p)?,
            "hensel" => self.hensel(&mut p)?,
            "special" => self.special(&mut p)?,
            "describe" => self.describe(&mut p)?,
            "val" => self.val(&mut p)?,
            "eq" => self.eq(&mut p)?,
            "polygon" => self.polygon(&mut p)?,
            "check" => self.check(&mut p)?,
            "show" => self.show(&mut p)?,
            other => {
                return Err(SyntaxError {
                    column: code.find(other).map_or(1, |i| code[..i].chars().count() + 1),
                    message: format!("unknown command '{other}'"),
                }
                .into())
            }
        };
        Ok(Some(report))
    }

    fn field(&mut self, p: &mut Parser) -> Result<Report, CommandError> {
        let name = p.ident()?;
        if name != "Q" {
            return Err(failed(format!("unsupported base field '{name}'; only Q is available")));
        }
        let n = p.integer()?;
        p.expect_end()?;
        let prime = n.to_u64().ok_or_else(|| failed(format!("{n} is not a supported prime")))?;
        let tower = Tower::new(prime)?;
        let primality = match tower.base().primality() {
            Primality::TrialDivision => "trial division",
            Primality::MillerRabin => "Miller-Rabin (probable prime)",
        };
        self.state = Some(State { tower, bindings: BTreeMap::new(), generators: Vec::new() });
        Ok(Report {
            text: format!("field Q with the {prime}-adic valuation (primality: {primality})"),
            data: json!({ "command": "field", "p": prime, "primality": primality }),
        })
    }

    fn binding_name(p: &mut Parser) -> Result<String, CommandError> {
        let column = p.column();
        let name = p.ident()?;
        if name == INDETERMINATE {
            return Err(SyntaxError {
                column,
                message: format!("'{INDETERMINATE}' is reserved for the indeterminate"),
            }
            .into());
        }
        p.expect(&Token::Assign)?;
        Ok(name)
    }

    fn hensel(&mut self, p: &mut Parser) -> Result<Report, CommandError> {
        let name = Self::binding_name(p)?;
        p.expect(&Token::LParen)?;
        let poly_expr = p.expr()?;
        p.expect(&Token::Comma)?;
        let point_expr = p.expr()?;
        p.expect(&Token::RParen)?;
        p.expect_end()?;

        let state = self.state.as_mut().ok_or_else(|| failed("no field defined; start with `field Q <p>`"))?;
        let poly = state.eval(&poly_expr, true)?;
        let point = state.element(&point_expr)?;
        let code = HenselCode::new(&state.tower, poly.clone(), point.clone())?;
        let zero = state.tower.hensel_zero(&code)?;
        let old_depth = state.tower.depth();
        state.tower = zero.tower;
        let generator = (state.tower.depth() > old_depth).then(|| {
            let g = format!("beta_{name}");
            state.generators.push(g.clone());
            state.bindings.insert(g.clone(), state.tower.generator(state.tower.depth()));
            g
        });
        state.bindings.insert(name.clone(), zero.root.clone());

        let names = Names(&state.generators);
        let chain = &zero.chain;
        let show_poly = |q: &Poly<Element>| render::poly(q, INDETERMINATE, names);
        let value = render::element(&zero.root, names);
        let description = describe_json(&state.tower.describe_to_base(&zero.root));
        let mut lines = vec![
            format!("{name} := root of {} near {}", show_poly(&poly), render::element(&point, names)),
            format!("  shifted: {}", show_poly(&chain.shifted)),
            format!(
                "  description of {name} - ({}): {}",
                render::element(&point, names),
                render::element(&chain.offset, names)
            ),
        ];
        let mut data = json!({
            "command": "hensel",
            "name": name,
            "poly": show_poly(&poly),
            "point": render::element(&point, names),
            "shifted": show_poly(&chain.shifted),
            "offset": render::element(&chain.offset, names),
        });
        if let Some(q) = &chain.unit_factor {
            lines.push(format!("  unit factor: {}", show_poly(q)));
            data["unit_factor"] = json!(show_poly(q));
        }
        match &chain.root {
            SpecialOutcome::Exact(x) => {
                lines.push(format!("  exact: {name} = {}", render::element(x, names)));
                data["exact"] = json!(true);
            }
            SpecialOutcome::Extended { special, mobius } => {
                let gen_name = generator.clone().unwrap_or_else(|| "1".into());
                let mobius = normalize_mobius(mobius);
                let det = mobius.determinant(&state.tower);
                let num = Poly::new(&state.tower, vec![mobius.b.clone(), mobius.a.clone()]);
                let den = Poly::new(&state.tower, vec![mobius.d.clone(), mobius.c.clone()]);
                let form =
                    format!("({})/({})", render::poly(&num, &gen_name, names), render::poly(&den, &gen_name, names));
                lines.push(format!("  special: {}", show_poly(special.poly())));
                lines.push(format!("  mobius: {name} = {form}, determinant {}", render::element(&det, names)));
                data["exact"] = json!(false);
                data["special"] = json!(show_poly(special.poly()));
                data["generator"] = json!(generator);
                data["mobius"] = json!({
                    "a": render::element(&mobius.a, names),
                    "b": render::element(&mobius.b, names),
                    "c": render::element(&mobius.c, names),
                    "d": render::element(&mobius.d, names),
                    "determinant": render::element(&det, names),
                    "form": form,
                });
            }
        }
        lines.push(format!("  value: {value}"));
        lines.push(format!("  description: {}", description_text(&description)));
        data["value"] = json!(value);
        data["description"] = description;
        Ok(Report { text: lines.join("\n"), data })
    }

    fn special(&mut self, p: &mut Parser) -> Result<Report, CommandError> {
        let name = Self::binding_name(p)?;
        let expr = p.expr()?;
        p.expect_end()?;
        let state = self.state.as_mut().ok_or_else(|| failed("no field defined; start with `field Q <p>`"))?;
        let poly = state.eval(&expr, true)?;
        let special = SpecialPoly::new(&state.tower, poly)?;
        let old_depth = state.tower.depth();
        let (tower, beta) = state.tower.extend(special.clone())?;
        state.tower = tower;
        let level = (state.tower.depth() > old_depth).then(|| {
            state.generators.push(name.clone());
            state.tower.depth()
        });
        state.bindings.insert(name.clone(), beta);
        let shown = render::poly(special.poly(), INDETERMINATE, Names(&state.generators));
        let text = match level {
            Some(l) => format!("{name} := special zero of {shown} (level {l})"),
            None => format!("{name} := 1 (1 is a root of {shown}; no extension needed)"),
        };
        Ok(Report { text, data: json!({ "command": "special", "name": name, "special": shown, "level": level }) })
    }

    fn describe(&mut self, p: &mut Parser) -> Result<Report, CommandError> {
        let state = self.state()?;
        let e = p.expr()?;
        p.expect_end()?;
        let e = state.element(&e)?;
        let d = describe_json(&state.tower.describe_to_base(&e));
        Ok(Report { text: description_text(&d), data: json!({ "command": "describe", "description": d }) })
    }

    fn val(&mut self, p: &mut Parser) -> Result<Report, CommandError> {
        let state = self.state()?;
        let e = p.expr()?;
        p.expect_end()?;
        let v = state.tower.val(&state.element(&e)?);
        Ok(Report { text: v.to_string(), data: json!({ "command": "val", "valuation": v.to_string() }) })
    }

    fn eq(&mut self, p: &mut Parser) -> Result<Report, CommandError> {
        let state = self.state()?;
        let lhs = p.expr()?;
        p.eat(&Token::Comma);
        let rhs = p.expr()?;
        p.expect_end()?;
        let equal = state.tower.element_equals(&state.element(&lhs)?, &state.element(&rhs)?);
        Ok(Report { text: equal.to_string(), data: json!({ "command": "eq", "equal": equal }) })
    }

    fn polygon(&mut self, p: &mut Parser) -> Result<Report, CommandError> {
        let state = self.state()?;
        let e = p.expr()?;
        p.expect_end()?;
        let poly = state.eval(&e, true)?;
        let polygon = NewtonPolygon::of_poly(&state.tower, &poly)?;
        let vertices: Vec<(usize, String)> =
            polygon.vertices().iter().map(|(i, v)| (*i, render::rational(v))).collect();
        let segments = polygon.segments();
        let slopes: Vec<String> = segments.iter().map(|s| render::rational(&s.root_val)).collect();
        let roots: Vec<String> = polygon.root_valuations().as_slice().iter().map(Val::to_string).collect();
        let isolated: Vec<Value> = polygon
            .isolated_segments()
            .iter()
            .map(|(k, v)| json!({ "k": k, "root_valuation": v.to_string() }))
            .collect();
        let mut text = format!(
            "vertices: {}\nslopes: {}\nroot valuations: {}",
            vertices.iter().map(|(i, v)| format!("({i}, {v})")).collect::<Vec<_>>().join(", "),
            if slopes.is_empty() { "none".into() } else { slopes.join(", ") },
            roots.join(", "),
        );
        if polygon.zero_root_width() > 0 {
            text.push_str(&format!("\nroot 0 with multiplicity {}", polygon.zero_root_width()));
        }
        Ok(Report {
            text,
            data: json!({
                "command": "polygon",
                "vertices": vertices.iter().map(|(i, v)| json!([i, v])).collect::<Vec<_>>(),
                "segments": segments.iter().map(|s| json!({
                    "start": s.start,
                    "end": s.end,
                    "root_valuation": render::rational(&s.root_val),
                })).collect::<Vec<_>>(),
                "slopes": slopes,
                "root_valuations": roots,
                "zero_root_multiplicity": polygon.zero_root_width(),
                "isolated": isolated,
            }),
        })
    }

    fn check(&mut self, p: &mut Parser) -> Result<Report, CommandError> {
        let state = self.state()?;
        let column = p.column();
        let name = p.ident()?;
        let precision = if p.at_end() {
            self.precision
        } else {
            let n = p.integer()?;
            n.to_u32().ok_or_else(|| failed(format!("precision {n} is out of range")))?
        };
        p.expect_end()?;
        let e = state.bindings.get(&name).ok_or_else(|| {
            CommandError::from(SyntaxError { column, message: format!("unbound identifier '{name}'") })
        })?;
        let approx = oracle::approximate_element(&state.tower, e, precision)?;
        let description = state.tower.describe_to_base(e);
        let verdict = match &description {
            ImmediateDescription::Zero => num_traits::Zero::is_zero(approx.residue()),
            ImmediateDescription::Value(x) => oracle::check_description(&approx, x)?,
        };
        let d = describe_json(&description);
        Ok(Report {
            text: format!(
                "{name} = {} mod {}^{}; description {}; {verdict}",
                approx.residue(),
                approx.p(),
                approx.precision(),
                description_text(&d)
            ),
            data: json!({
                "command": "check",
                "name": name,
                "precision": precision,
                "residue": approx.residue().to_string(),
                "description": d,
                "verdict": verdict,
            }),
        })
    }

    fn show(&mut self, p: &mut Parser) -> Result<Report, CommandError> {
        let what = p.ident()?;
        if what != "tower" {
            return Err(failed(format!("nothing called '{what}' to show; try `show tower`")));
        }
        p.expect_end()?;
        let state = self.state()?;
        let names = Names(&state.generators);
        let mut lines = vec![format!("base: Q, p = {}", state.tower.base().p())];
        let mut levels = Vec::new();
        for (i, g) in state.generators.iter().enumerate() {
            let t = render::poly(state.tower.special(i + 1).poly(), INDETERMINATE, names);
            lines.push(format!("level {}: {g}, special zero of {t}", i + 1));
            levels.push(json!({ "level": i + 1, "generator": g, "special": t }));
        }
        let mut bindings = serde_json::Map::new();
        for (name, e) in &state.bindings {
            let s = render::element(e, names);
            lines.push(format!("{name} = {s}"));
            bindings.insert(name.clone(), json!(s));
        }
        Ok(Report {
            text: lines.join("\n"),
            data: json!({
                "command": "show",
                "p": state.tower.base().p(),
                "levels": levels,
                "bindings": bindings,
            }),
        })
    }
}

fn normalize_mobius(m: &MobiusForm<Element>) -> MobiusForm<Element> {
    match (m.a.as_rational(), m.b.as_rational(), m.c.as_rational(), m.d.as_rational()) {
        (Some(a), Some(b), Some(c), Some(d)) => {
            let n = MobiusForm { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone() }.normalized();
            MobiusForm { a: n.a.into(), b: n.b.into(), c: n.c.into(), d: n.d.into() }
        }
        _ => m.clone(),
    }
}

fn describe_json(d: &ImmediateDescription<Rational>) -> Value {
    match d {
        ImmediateDescription::Zero => Value::Null,
        ImmediateDescription::Value(x) => json!(render::rational(x)),
    }
}

fn description_text(d: &Value) -> String {
    match d {
        Value::String(s) => s.clone(),
        _ => "Zero".into(),
    }
}

impl State {
    fn element(&self, e: &Expr) -> Result<Element, CommandError> {
        let p = self.eval(e, false)?;
        Ok(p.coeff(&self.tower, 0))
    }

    /// Evaluates to a polynomial in `x`; with `allow_x` false the result is
    /// a constant and `x` is an unbound name.
    fn eval(&self, e: &Expr, allow_x: bool) -> Result<Poly<Element>, CommandError> {
        let t = &self.tower;
        Ok(match e {
            Expr::Int(n) => Poly::constant(t, Element::Rat(Rational::from_integer(n.clone()))),
            Expr::Var { name, .. } if allow_x && name == INDETERMINATE => Poly::x(t),
            Expr::Var { name, column } => match self.bindings.get(name) {
                Some(v) => Poly::constant(t, v.clone()),
                None => {
                    return Err(SyntaxError { column: *column, message: format!("unbound identifier '{name}'") }.into())
                }
            },
            Expr::Neg(a) => self.eval(a, allow_x)?.neg(t),
            Expr::Add(a, b) => self.eval(a, allow_x)?.add(t, &self.eval(b, allow_x)?),
            Expr::Sub(a, b) => self.eval(a, allow_x)?.sub(t, &self.eval(b, allow_x)?),
            Expr::Mul(a, b) => self.eval(a, allow_x)?.mul(t, &self.eval(b, allow_x)?),
            Expr::Div { num, den, .. } => {
                let d = self.eval(den, allow_x)?;
                let num = self.eval(num, allow_x)?;
                num.scale(t, &self.constant_inverse(&d)?)
            }
            Expr::Pow { base, exp, .. } => {
                let b = self.eval(base, allow_x)?;
                let n =
                    u32::try_from(exp.unsigned_abs()).map_err(|_| failed(format!("exponent {exp} is too large")))?;
                if *exp >= 0 {
                    let mut acc = Poly::constant(t, t.one());
                    for _ in 0..n {
                        acc = acc.mul(t, &b);
                    }
                    acc
                } else {
                    Poly::constant(t, t.pow(&self.constant_inverse(&b)?, n))
                }
            }
        })
    }

    fn constant_inverse(&self, d: &Poly<Element>) -> Result<Element, CommandError> {
        if d.degree().is_some_and(|k| k > 0) {
            return Err(failed("division by a non-constant polynomial"));
        }
        Ok(self.tower.inv(&d.coeff(&self.tower, 0))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(session: &mut Session, line: &str) -> Report {
        session.execute(line).unwrap().unwrap()
    }

    #[test]
    fn sqrt6_chain() {
        let mut s = Session::default();
        run(&mut s, "field Q 5");
        let r = run(&mut s, "hensel a := (x^2 - 6, 1)");
        assert_eq!(r.data["shifted"], "x^2 + 2*x - 5");
        assert_eq!(r.data["offset"], "5/2");
        assert_eq!(r.data["unit_factor"], "-(5/4)*x^2 - x + 1");
        assert_eq!(r.data["special"], "x^2 - x + 25/196");
        assert_eq!(r.data["mobius"]["form"], "(98*beta_a - 25)/(28*beta_a)");
        assert_eq!(r.data["mobius"]["determinant"], "700");
        assert_eq!(run(&mut s, "describe a^2 - 6").text, "Zero");
        assert_eq!(run(&mut s, "eq a^2, 6").text, "true");
        assert_eq!(run(&mut s, "val a - 1").text, "1");
        assert_eq!(run(&mut s, "describe beta_a").text, "121/196");
    }

    #[test]
    fn polygon_example() {
        let mut s = Session::default();
        run(&mut s, "field Q 5");
        let r = run(&mut s, "polygon x^2 + 2*x - 5");
        assert_eq!(r.data["vertices"], json!([[0, "1"], [1, "0"], [2, "0"]]));
        assert_eq!(r.data["slopes"], json!(["1", "0"]));
    }

    #[test]
    fn errors() {
        let mut s = Session::default();
        assert_eq!(s.execute("val 1").unwrap_err().exit_code(), 1);
        run(&mut s, "field Q 5");
        let e = s.execute("hensel a := (x^2 - 6, 2)").unwrap_err();
        assert_eq!(e, CommandError::Failed("P(a) not in maximal ideal".into()));
        assert_eq!(s.execute("frobnicate").unwrap_err().exit_code(), 2);
        assert_eq!(s.execute("val (1").unwrap_err().exit_code(), 2);
        assert!(matches!(s.execute("val y").unwrap_err(), CommandError::Syntax(SyntaxError { column: 5, .. })));
        assert_eq!(s.execute("val 1/0").unwrap_err().exit_code(), 1);
        assert_eq!(s.execute("val x").unwrap_err().exit_code(), 2);
        assert_eq!(s.execute("field Q 6").unwrap_err().exit_code(), 1);
        assert!(s.execute("  # comment").unwrap().is_none());
    }
}
