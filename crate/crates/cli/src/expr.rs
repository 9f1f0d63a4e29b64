//! Tokenizer and recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at column {column}: {message}")]
pub struct SyntaxError {
    /// 1-based column in the source line.
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    fn new(column: usize, message: impl Into<String>) -> Self {
        SyntaxError { column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Assign,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(n) => write!(f, "{n}"),
            Token::Ident(s) => f.write_str(s),
            Token::Plus => f.write_str("+"),
            Token::Minus => f.write_str("-"),
            Token::Star => f.write_str("*"),
            Token::Slash => f.write_str("/"),
            Token::Caret => f.write_str("^"),
            Token::LParen => f.write_str("("),
            Token::RParen => f.write_str(")"),
            Token::Comma => f.write_str(","),
            Token::Assign => f.write_str(":="),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub column: usize,
}

pub fn tokenize(line: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse().expect("ascii digits");
            out.push(Spanned { token: Token::Int(n), column });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned { token: Token::Ident(chars[start..i].iter().collect()), column });
            continue;
        }
        let token = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            ':' if chars.get(i + 1) == Some(&'=') => {
                i += 1;
                Token::Assign
            }
            _ => return Err(SyntaxError::new(column, format!("unexpected character '{c}'"))),
        };
        out.push(Spanned { token, column });
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var { name: String, column: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div { num: Box<Expr>, den: Box<Expr>, column: usize },
    Pow { base: Box<Expr>, exp: i64, column: usize },
}

/// Cursor over a token stream; commands drive it piece by piece.
pub struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    pub fn new(line: &str) -> Result<Self, SyntaxError> {
        Ok(Parser { tokens: tokenize(line)?, pos: 0, end_column: line.chars().count() + 1 })
    }

    pub fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    pub fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |s| s.column)
    }

    pub fn at_end(&self) -> bool {
        self.pos == self.tokens.len()
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|s| s.token.clone());
        self.pos += 1;
        t
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.column(), message)
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found '{t}'")),
            None => self.error(format!("expected {wanted}, found end of line")),
        }
    }

    pub fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, token: &Token) -> Result<(), SyntaxError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{token}'")))
        }
    }

    pub fn expect_end(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }

    pub fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(Token::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub fn integer(&mut self) -> Result<BigInt, SyntaxError> {
        match self.peek() {
            Some(Token::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    pub fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Token::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Token::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let column = self.column();
            if self.eat(&Token::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(&Token::Slash) {
                lhs = Expr::Div { num: Box::new(lhs), den: Box::new(self.unary()?), column };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat(&Token::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        let column = self.column();
        if !self.eat(&Token::Caret) {
            return Ok(base);
        }
        let negative = self.eat(&Token::Minus);
        let n = self.integer()?;
        let exp = i64::try_from(&n).map_err(|_| SyntaxError::new(column, "exponent too large"))?;
        let exp = if negative { -exp } else { exp };
        Ok(Expr::Pow { base: Box::new(base), exp, column })
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let column = self.column();
        match self.bump() {
            Some(Token::Int(n)) => Ok(Expr::Int(n)),
            Some(Token::Ident(name)) => Ok(Expr::Var { name, column }),
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(&Token::RParen)?;
                Ok(e)
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a number, identifier or '('"))
            }
        }
    }
}

/// Parses a line holding exactly one expression.
pub fn parse_expr(line: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser::new(line)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Box<Expr> {
        Box::new(Expr::Int(n.into()))
    }

    fn var(name: &str, column: usize) -> Box<Expr> {
        Box::new(Expr::Var { name: name.into(), column })
    }

    #[test]
    fn precedence() {
        let e = parse_expr("x^2 - 6").unwrap();
        assert_eq!(e, Expr::Sub(Box::new(Expr::Pow { base: var("x", 1), exp: 2, column: 2 }), int(6)));
        let e = parse_expr("-x^2").unwrap();
        assert_eq!(e, Expr::Neg(Box::new(Expr::Pow { base: var("x", 2), exp: 2, column: 3 })));
        let e = parse_expr("1/2*x").unwrap();
        assert_eq!(e, Expr::Mul(Box::new(Expr::Div { num: int(1), den: int(2), column: 2 }), var("x", 5)));
    }

    #[test]
    fn negative_exponent() {
        let e = parse_expr("a^-2").unwrap();
        assert_eq!(e, Expr::Pow { base: var("a", 1), exp: -2, column: 2 });
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(parse_expr("x + ").unwrap_err().column, 5);
        assert_eq!(parse_expr("x $ 1").unwrap_err().column, 3);
        assert_eq!(parse_expr("(x + 1").unwrap_err().column, 7);
        assert_eq!(parse_expr("x 1").unwrap_err().column, 3);
        assert_eq!(parse_expr("x^y").unwrap_err().column, 3);
    }

    #[test]
    fn assign_token() {
        let toks: Vec<Token> = tokenize("a := (x, 1)").unwrap().into_iter().map(|s| s.token).collect();
        assert_eq!(
            toks,
            vec![
                Token::Ident("a".into()),
                Token::Assign,
                Token::LParen,
                Token::Ident("x".into()),
                Token::Comma,
                Token::Int(1.into()),
                Token::RParen,
            ]
        );
        assert!(tokenize("a : b").is_err());
    }
}
