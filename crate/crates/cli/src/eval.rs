//! Evaluates parsed scripts against the engine.

use crate::dsl::{Bundle, Command, Expr, Family, Poly, Script, Stmt};
use cobtower::charnum::{blowup_milnor, chern_number, milnor_number, todd_genus, Partition};
use cobtower::scalar::Scalar;
use cobtower::variety::{BundleSpec, Variety};
use cobtower::{RingClass, TowerRing};
use std::collections::BTreeMap;
use std::fmt;

/// An evaluation failure, tagged with the statement that raised it.
#[derive(Clone, Debug)]
pub struct EvalError {
    pub statement: usize,
    pub message: String,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "statement {}: {}", self.statement + 1, self.message)
    }
}

impl std::error::Error for EvalError {}

/// One command's outcome.
#[derive(Clone, Debug)]
pub struct CommandResult {
    pub statement: usize,
    pub command: String,
    pub value: Option<String>,
    pub error: Option<String>,
}

impl CommandResult {
    pub fn ok(&self) -> bool {
        self.error.is_none()
    }
}

/// Runs a script: executes statements in order, appending one result entry
/// per command. Evaluation errors are recorded against their statement and
/// stop the run.
pub fn run(script: &Script) -> Vec<CommandResult> {
    let mut env: BTreeMap<String, Variety> = BTreeMap::new();
    let mut results = Vec::new();
    for (idx, stmt) in script.stmts.iter().enumerate() {
        match stmt {
            Stmt::Let { name, expr } => match eval_expr(expr, idx) {
                Ok(v) => {
                    env.insert(name.clone(), v.rename(name));
                }
                Err(e) => {
                    results.push(CommandResult {
                        statement: idx,
                        command: format!("let {name}"),
                        value: None,
                        error: Some(e.message),
                    });
                    break;
                }
            },
            Stmt::Command(cmd) => {
                let printed = crate::dsl::print(&Script {
                    stmts: vec![Stmt::Command(cmd.clone())],
                });
                let printed = printed.trim_end_matches(['\n', ';']).to_string();
                match eval_command(cmd, &env, idx) {
                    Ok(value) => results.push(CommandResult {
                        statement: idx,
                        command: printed,
                        value: Some(value),
                        error: None,
                    }),
                    Err(e) => {
                        results.push(CommandResult {
                            statement: idx,
                            command: printed,
                            value: None,
                            error: Some(e.message),
                        });
                        break;
                    }
                }
            }
        }
    }
    results
}

fn fail<T>(statement: usize, message: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError {
        statement,
        message: message.into(),
    })
}

fn engine<T>(statement: usize, r: cobtower::Result<T>) -> Result<T, EvalError> {
    r.map_err(|e| EvalError {
        statement,
        message: e.to_string(),
    })
}

fn eval_expr(expr: &Expr, idx: usize) -> Result<Variety, EvalError> {
    match expr {
        Expr::Point => Ok(Variety::point()),
        Expr::Cp(n) => Ok(Variety::projective_space(*n)),
        Expr::Bf(n) => Ok(Variety::bounded_flag(*n)),
        Expr::BfBundle(base, lines) => {
            let base = eval_expr(base, idx)?;
            let classes = lines
                .iter()
                .map(|p| eval_poly(p, base.ring(), idx))
                .collect::<Result<Vec<_>, _>>()?;
            engine(idx, Variety::bf_bundle(&base, &classes))
        }
        Expr::Proj(base, bundle) => {
            let base = eval_expr(base, idx)?;
            let spec = match bundle {
                Bundle::Lines(polys) => BundleSpec::Lines(
                    polys
                        .iter()
                        .map(|p| eval_poly(p, base.ring(), idx))
                        .collect::<Result<Vec<_>, _>>()?,
                ),
                Bundle::Chern(poly, rank) => BundleSpec::Chern {
                    total: eval_poly(poly, base.ring(), idx)?,
                    rank: *rank,
                },
            };
            engine(idx, Variety::projectivize(&base, &spec, "w"))
        }
        Expr::Product(a, b) => {
            let a = eval_expr(a, idx)?;
            let b = eval_expr(b, idx)?;
            engine(idx, Variety::product(&a, &b))
        }
        Expr::Named(family, i, j) => engine(
            idx,
            match family {
                Family::X => Variety::x_variety(*i, *j),
                Family::Z => Variety::z_variety(*i, *j),
                Family::Y => Variety::y_variety(*i, *j),
                Family::Br => Variety::br_variety(*i, *j),
                Family::H => Variety::h_variety(*i, *j),
                Family::L => Variety::l_variety(*i, *j),
            },
        ),
    }
}

/// Resolves a class polynomial in a ring: generator names bind to the
/// ring's fiber generators.
fn eval_poly(poly: &Poly, ring: &TowerRing, idx: usize) -> Result<RingClass, EvalError> {
    match poly {
        Poly::Int(n) => {
            let n = i64::try_from(*n)
                .map_err(|_| EvalError {
                    statement: idx,
                    message: "integer literal too large".into(),
                })?;
            Ok(ring.constant(Scalar::from_int(n)))
        }
        Poly::Gen(name) => {
            let names = ring.generator_names();
            match names.iter().position(|n| n == name) {
                Some(k) => Ok(ring.generator(k)),
                None => fail(
                    idx,
                    format!(
                        "unknown generator `{name}` (ring generators: {})",
                        if names.is_empty() {
                            "none".to_string()
                        } else {
                            names.join(", ")
                        }
                    ),
                ),
            }
        }
        Poly::Neg(p) => Ok(eval_poly(p, ring, idx)?.neg()),
        Poly::Add(a, b) => engine(
            idx,
            eval_poly(a, ring, idx)?.add(&eval_poly(b, ring, idx)?),
        ),
        Poly::Sub(a, b) => engine(
            idx,
            eval_poly(a, ring, idx)?.sub(&eval_poly(b, ring, idx)?),
        ),
        Poly::Mul(a, b) => engine(
            idx,
            eval_poly(a, ring, idx)?.mul(&eval_poly(b, ring, idx)?),
        ),
        Poly::Pow(a, e) => Ok(eval_poly(a, ring, idx)?.pow(*e)),
    }
}

fn lookup<'a>(
    env: &'a BTreeMap<String, Variety>,
    name: &str,
    idx: usize,
) -> Result<&'a Variety, EvalError> {
    env.get(name)
        .ok_or_else(|| EvalError {
            statement: idx,
            message: format!("`{name}` is not bound"),
        })
}

fn eval_command(
    cmd: &Command,
    env: &BTreeMap<String, Variety>,
    idx: usize,
) -> Result<String, EvalError> {
    match cmd {
        Command::Milnor(v) => Ok(milnor_number(lookup(env, v, idx)?).to_string()),
        Command::Todd(v) => Ok(todd_genus(lookup(env, v, idx)?).to_string()),
        Command::ChernNumber(v, parts) => {
            let v = lookup(env, v, idx)?;
            let partition = engine(idx, Partition::new(parts.clone()))?;
            Ok(engine(idx, chern_number(v, &partition))?.to_string())
        }
        Command::DualMilnor(v, poly) => {
            let v = lookup(env, v, idx)?;
            let c1 = eval_poly(poly, v.ring(), idx)?;
            Ok(engine(idx, v.dual_hypersurface_milnor(&c1))?.to_string())
        }
        Command::BlowupMilnor(a, b) => {
            let a = lookup(env, a, idx)?;
            let b = lookup(env, b, idx)?;
            Ok(engine(idx, blowup_milnor(a, b))?.to_string())
        }
    }
}
