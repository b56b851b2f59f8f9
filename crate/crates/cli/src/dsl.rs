//! The tower-description language: a small script format of let-bindings
//! and commands.
//!
//! ```text
//! # build a blow-up pair and compare
//! let x = X(2, 2);
//! let y = Y(2, 2);
//! blowup_milnor(x, y);
//! let c = proj(CP(2), chern(1 + y, 3));
//! milnor(c);
//! ```
//!
//! Statements are `let NAME = expr;` or `command;`, names are bound before
//! use and assigned once, `#` starts a comment. Class polynomials are
//! integer combinations of generator names under `+ - * ^`; they are
//! resolved against the ring of the enclosing expression at evaluation
//! time. The printer and parser round-trip exactly.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Let { name: String, expr: Expr },
    Command(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Point,
    Cp(u32),
    Bf(u32),
    BfBundle(Box<Expr>, Vec<Poly>),
    Proj(Box<Expr>, Bundle),
    Product(Box<Expr>, Box<Expr>),
    Named(Family, u32, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    X,
    Z,
    Y,
    Br,
    H,
    L,
}

impl Family {
    pub fn keyword(self) -> &'static str {
        match self {
            Family::X => "X",
            Family::Z => "Z",
            Family::Y => "Y",
            Family::Br => "BR",
            Family::H => "H",
            Family::L => "L",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bundle {
    Lines(Vec<Poly>),
    Chern(Poly, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Poly {
    Int(u64),
    Gen(String),
    Neg(Box<Poly>),
    Add(Box<Poly>, Box<Poly>),
    Sub(Box<Poly>, Box<Poly>),
    Mul(Box<Poly>, Box<Poly>),
    Pow(Box<Poly>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Milnor(String),
    Todd(String),
    ChernNumber(String, Vec<u32>),
    DualMilnor(String, Poly),
    BlowupMilnor(String, String),
}

impl Command {
    pub fn keyword(&self) -> &'static str {
        match self {
            Command::Milnor(_) => "milnor",
            Command::Todd(_) => "todd",
            Command::ChernNumber(..) => "chern_number",
            Command::DualMilnor(..) => "dual_milnor",
            Command::BlowupMilnor(..) => "blowup_milnor",
        }
    }
}

const COMMAND_KEYWORDS: &[&str] = &[
    "milnor",
    "todd",
    "chern_number",
    "dual_milnor",
    "blowup_milnor",
];

/// A parse error with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Plus,
    Minus,
    Star,
    Caret,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(source: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = source.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    bump(&mut chars);
                    if c == '\n' {
                        break;
                    }
                }
            }
            '0'..='9' => {
                let mut n: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(u64::from(v)))
                            .ok_or(ParseError {
                                line: tline,
                                col: tcol,
                                message: "integer literal too large".into(),
                            })?;
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(n),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    line: tline,
                    col: tcol,
                });
            }
            _ => {
                let c = bump(&mut chars);
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '=' => Tok::Eq,
                    '+' => Tok::Plus,
                    '-' | '\u{2212}' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    other => {
                        return Err(ParseError {
                            line: tline,
                            col: tcol,
                            message: format!("unexpected character `{other}`"),
                        })
                    }
                };
                out.push(Spanned {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end_line: u32,
    end_col: u32,
    bound: Vec<String>,
}

impl Parser {
    fn err_at(&self, line: u32, col: u32, message: String) -> ParseError {
        ParseError { line, col, message }
    }

    fn here(&self) -> (u32, u32) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn err(&self, message: String) -> ParseError {
        let (line, col) = self.here();
        self.err_at(line, col, message)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn next(&mut self, what: &str) -> Result<Spanned, ParseError> {
        let s = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err(format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(s)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        let s = self.next(&tok.to_string())?;
        if s.tok == tok {
            Ok(())
        } else {
            Err(self.err_at(s.line, s.col, format!("expected {}, found {}", tok, s.tok)))
        }
    }

    fn expect_int(&mut self) -> Result<u64, ParseError> {
        let s = self.next("an integer")?;
        match s.tok {
            Tok::Int(n) => Ok(n),
            other => Err(self.err_at(s.line, s.col, format!("expected an integer, found {other}"))),
        }
    }

    fn expect_small_int(&mut self) -> Result<u32, ParseError> {
        let (line, col) = self.here();
        let n = self.expect_int()?;
        u32::try_from(n).map_err(|_| self.err_at(line, col, "integer too large".into()))
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, u32, u32), ParseError> {
        let s = self.next(what)?;
        match s.tok {
            Tok::Ident(name) => Ok((name, s.line, s.col)),
            other => Err(self.err_at(s.line, s.col, format!("expected {what}, found {other}"))),
        }
    }

    fn script(&mut self) -> Result<Script, ParseError> {
        let mut stmts = Vec::new();
        while self.peek().is_some() {
            stmts.push(self.stmt()?);
        }
        Ok(Script { stmts })
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let (head, line, col) = self.expect_ident("`let` or a command")?;
        if head == "let" {
            let (name, nline, ncol) = self.expect_ident("a binding name")?;
            if COMMAND_KEYWORDS.contains(&name.as_str()) || name == "let" {
                return Err(self.err_at(nline, ncol, format!("`{name}` is a reserved word")));
            }
            if self.bound.iter().any(|b| b == &name) {
                return Err(self.err_at(
                    nline,
                    ncol,
                    format!("`{name}` is already bound (single assignment)"),
                ));
            }
            self.expect(Tok::Eq)?;
            let expr = self.expr()?;
            self.expect(Tok::Semi)?;
            self.bound.push(name.clone());
            Ok(Stmt::Let { name, expr })
        } else {
            let cmd = self.command(&head, line, col)?;
            self.expect(Tok::Semi)?;
            Ok(Stmt::Command(cmd))
        }
    }

    fn bound_name(&mut self) -> Result<String, ParseError> {
        let (name, line, col) = self.expect_ident("a bound name")?;
        if !self.bound.iter().any(|b| b == &name) {
            return Err(self.err_at(line, col, format!("`{name}` is not bound")));
        }
        Ok(name)
    }

    fn command(&mut self, head: &str, line: u32, col: u32) -> Result<Command, ParseError> {
        let cmd = match head {
            "milnor" => {
                self.expect(Tok::LParen)?;
                let v = self.bound_name()?;
                self.expect(Tok::RParen)?;
                Command::Milnor(v)
            }
            "todd" => {
                self.expect(Tok::LParen)?;
                let v = self.bound_name()?;
                self.expect(Tok::RParen)?;
                Command::Todd(v)
            }
            "chern_number" => {
                self.expect(Tok::LParen)?;
                let v = self.bound_name()?;
                self.expect(Tok::Comma)?;
                self.expect(Tok::LBracket)?;
                let mut parts = vec![self.expect_small_int()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    parts.push(self.expect_small_int()?);
                }
                self.expect(Tok::RBracket)?;
                self.expect(Tok::RParen)?;
                Command::ChernNumber(v, parts)
            }
            "dual_milnor" => {
                self.expect(Tok::LParen)?;
                let v = self.bound_name()?;
                self.expect(Tok::Comma)?;
                let p = self.poly()?;
                self.expect(Tok::RParen)?;
                Command::DualMilnor(v, p)
            }
            "blowup_milnor" => {
                self.expect(Tok::LParen)?;
                let a = self.bound_name()?;
                self.expect(Tok::Comma)?;
                let b = self.bound_name()?;
                self.expect(Tok::RParen)?;
                Command::BlowupMilnor(a, b)
            }
            other => {
                return Err(self.err_at(line, col, format!("unknown command `{other}`")));
            }
        };
        Ok(cmd)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let (head, line, col) = self.expect_ident("an expression")?;
        let expr = match head.as_str() {
            "point" => {
                self.expect(Tok::LParen)?;
                self.expect(Tok::RParen)?;
                Expr::Point
            }
            "CP" => {
                self.expect(Tok::LParen)?;
                let n = self.expect_small_int()?;
                self.expect(Tok::RParen)?;
                Expr::Cp(n)
            }
            "BF" => {
                self.expect(Tok::LParen)?;
                let n = self.expect_small_int()?;
                self.expect(Tok::RParen)?;
                Expr::Bf(n)
            }
            "BFbundle" => {
                self.expect(Tok::LParen)?;
                let base = self.expr()?;
                self.expect(Tok::Comma)?;
                let lines = self.classlist()?;
                self.expect(Tok::RParen)?;
                Expr::BfBundle(Box::new(base), lines)
            }
            "proj" => {
                self.expect(Tok::LParen)?;
                let base = self.expr()?;
                self.expect(Tok::Comma)?;
                let bundle = self.bundle()?;
                self.expect(Tok::RParen)?;
                Expr::Proj(Box::new(base), bundle)
            }
            "product" => {
                self.expect(Tok::LParen)?;
                let a = self.expr()?;
                self.expect(Tok::Comma)?;
                let b = self.expr()?;
                self.expect(Tok::RParen)?;
                Expr::Product(Box::new(a), Box::new(b))
            }
            "X" | "Z" | "Y" | "BR" | "H" | "L" => {
                let family = match head.as_str() {
                    "X" => Family::X,
                    "Z" => Family::Z,
                    "Y" => Family::Y,
                    "BR" => Family::Br,
                    "H" => Family::H,
                    _ => Family::L,
                };
                self.expect(Tok::LParen)?;
                let i = self.expect_small_int()?;
                self.expect(Tok::Comma)?;
                let j = self.expect_small_int()?;
                self.expect(Tok::RParen)?;
                Expr::Named(family, i, j)
            }
            other => {
                return Err(self.err_at(line, col, format!("unknown constructor `{other}`")));
            }
        };
        Ok(expr)
    }

    fn classlist(&mut self) -> Result<Vec<Poly>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::RBracket) {
            self.pos += 1;
            return Ok(out);
        }
        out.push(self.poly()?);
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            out.push(self.poly()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn bundle(&mut self) -> Result<Bundle, ParseError> {
        let (head, line, col) = self.expect_ident("`lines` or `chern`")?;
        match head.as_str() {
            "lines" => {
                self.expect(Tok::LParen)?;
                let lines = self.classlist()?;
                self.expect(Tok::RParen)?;
                Ok(Bundle::Lines(lines))
            }
            "chern" => {
                self.expect(Tok::LParen)?;
                let p = self.poly()?;
                self.expect(Tok::Comma)?;
                let rank = self.expect_small_int()?;
                self.expect(Tok::RParen)?;
                Ok(Bundle::Chern(p, rank))
            }
            other => Err(self.err_at(line, col, format!("expected `lines` or `chern`, found `{other}`"))),
        }
    }

    /// sum := term (("+" | "-") term)*, left associative.
    fn poly(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.poly_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = Poly::Add(Box::new(acc), Box::new(self.poly_term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = Poly::Sub(Box::new(acc), Box::new(self.poly_term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// term := unary ("*" unary)*, left associative.
    fn poly_term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.poly_unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = Poly::Mul(Box::new(acc), Box::new(self.poly_unary()?));
        }
        Ok(acc)
    }

    fn poly_unary(&mut self) -> Result<Poly, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Poly::Neg(Box::new(self.poly_unary()?)));
        }
        self.poly_factor()
    }

    /// factor := primary ("^" INT)?
    fn poly_factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.poly_primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.expect_small_int()?;
            return Ok(Poly::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn poly_primary(&mut self) -> Result<Poly, ParseError> {
        let s = self.next("a class polynomial")?;
        match s.tok {
            Tok::Int(n) => Ok(Poly::Int(n)),
            Tok::Ident(name) => Ok(Poly::Gen(name)),
            Tok::LParen => {
                let p = self.poly()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            other => Err(self.err_at(
                s.line,
                s.col,
                format!("expected a class polynomial, found {other}"),
            )),
        }
    }
}

/// Parses a script, checking name binding (bound before use, single
/// assignment) along the way. Generator names inside class polynomials are
/// resolved later, against an actual ring, at evaluation time.
pub fn parse(source: &str) -> Result<Script, ParseError> {
    let toks = lex(source)?;
    let (end_line, end_col) = toks
        .last()
        .map(|s| (s.line, s.col + 1))
        .unwrap_or((1, 1));
    let mut p = Parser {
        toks,
        pos: 0,
        end_line,
        end_col,
        bound: Vec::new(),
    };
    p.script()
}

/// Canonical printer; `parse(print(s)) == s` for every valid script.
pub fn print(script: &Script) -> String {
    let mut out = String::new();
    for stmt in &script.stmts {
        match stmt {
            Stmt::Let { name, expr } => {
                out.push_str(&format!("let {name} = {};\n", print_expr(expr)));
            }
            Stmt::Command(cmd) => {
                out.push_str(&print_command(cmd));
                out.push_str(";\n");
            }
        }
    }
    out
}

fn print_command(cmd: &Command) -> String {
    match cmd {
        Command::Milnor(v) => format!("milnor({v})"),
        Command::Todd(v) => format!("todd({v})"),
        Command::ChernNumber(v, parts) => {
            let parts: Vec<String> = parts.iter().map(u32::to_string).collect();
            format!("chern_number({v}, [{}])", parts.join(", "))
        }
        Command::DualMilnor(v, p) => format!("dual_milnor({v}, {})", print_poly(p, 0)),
        Command::BlowupMilnor(a, b) => format!("blowup_milnor({a}, {b})"),
    }
}

fn print_expr(expr: &Expr) -> String {
    match expr {
        Expr::Point => "point()".into(),
        Expr::Cp(n) => format!("CP({n})"),
        Expr::Bf(n) => format!("BF({n})"),
        Expr::BfBundle(base, lines) => {
            let lines: Vec<String> = lines.iter().map(|p| print_poly(p, 0)).collect();
            format!("BFbundle({}, [{}])", print_expr(base), lines.join(", "))
        }
        Expr::Proj(base, bundle) => {
            let bundle = match bundle {
                Bundle::Lines(lines) => {
                    let lines: Vec<String> = lines.iter().map(|p| print_poly(p, 0)).collect();
                    format!("lines([{}])", lines.join(", "))
                }
                Bundle::Chern(p, rank) => format!("chern({}, {rank})", print_poly(p, 0)),
            };
            format!("proj({}, {bundle})", print_expr(base))
        }
        Expr::Product(a, b) => format!("product({}, {})", print_expr(a), print_expr(b)),
        Expr::Named(f, i, j) => format!("{}({i}, {j})", f.keyword()),
    }
}

/// Precedence: sum 1, product 2, unary minus 3, power 4, atoms 5.
/// Right operands of the left-associative levels are printed one level
/// tighter so that reparsing rebuilds the same tree.
fn print_poly(p: &Poly, min_prec: u8) -> String {
    let (prec, body) = match p {
        Poly::Int(n) => (5, n.to_string()),
        Poly::Gen(s) => (5, s.clone()),
        Poly::Add(a, b) => (1, format!("{} + {}", print_poly(a, 1), print_poly(b, 2))),
        Poly::Sub(a, b) => (1, format!("{} - {}", print_poly(a, 1), print_poly(b, 2))),
        Poly::Mul(a, b) => (2, format!("{}*{}", print_poly(a, 2), print_poly(b, 3))),
        Poly::Neg(a) => (3, format!("-{}", print_poly(a, 3))),
        Poly::Pow(a, e) => (4, format!("{}^{}", print_poly(a, 5), e)),
    };
    if prec < min_prec {
        format!("({body})")
    } else {
        body
    }
}
