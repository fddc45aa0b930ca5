use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

use super::lp::{big, big_int, lp_point, Big, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: Rational, rhs: Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub terms: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Integer variables in boxes plus linear constraints with rational data.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntegerProgram {
    pub bounds: Vec<(i64, i64)>,
    pub constraints: Vec<LinearConstraint>,
}

impl IntegerProgram {
    pub fn add_var(&mut self, lo: i64, hi: i64) -> usize {
        self.bounds.push((lo, hi));
        self.bounds.len() - 1
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        self.constraints.push(LinearConstraint {
            terms,
            relation,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_satisfied(&self, x: &[i64]) -> bool {
        x.len() == self.bounds.len()
            && x
                .iter()
                .zip(&self.bounds)
                .all(|(v, (l, u))| l <= v && v <= u)
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.terms.iter().map(|&(j, a)| a * x[j]).sum();
                c.relation.holds(lhs, c.rhs)
            })
    }
}

/// Plain-text listing in the spirit of the LP file format.
impl fmt::Display for IntegerProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subject to")?;
        for (i, c) in self.constraints.iter().enumerate() {
            write!(f, "  r{i}:")?;
            if c.terms.is_empty() {
                write!(f, " 0")?;
            }
            for (j, a) in &c.terms {
                if a.is_negative() {
                    write!(f, " - {} t{j}", -a)?;
                } else {
                    write!(f, " + {a} t{j}")?;
                }
            }
            writeln!(f, " {} {}", c.relation.symbol(), c.rhs)?;
        }
        writeln!(f, "bounds")?;
        for (j, (l, u)) in self.bounds.iter().enumerate() {
            writeln!(f, "  {l} <= t{j} <= {u}")?;
        }
        writeln!(f, "general")?;
        for j in 0..self.bounds.len() {
            write!(f, " t{j}")?;
        }
        writeln!(f)?;
        write!(f, "end")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IlpConfig {
    pub var_cap: usize,
    /// Search nodes before giving up with a resource error.
    pub node_cap: u64,
    /// Largest `m!` accepted when building rule descriptions.
    pub perm_cap: u128,
}

impl Default for IlpConfig {
    fn default() -> Self {
        IlpConfig {
            var_cap: 2000,
            node_cap: 2_000_000,
            perm_cap: 720,
        }
    }
}

struct Prepared {
    rows: Vec<Row>,
}

fn floor_big(v: &Big) -> i64 {
    v.floor().to_integer().to_i64().unwrap_or(if v.is_negative() { i64::MIN } else { i64::MAX })
}


/// Tightens the box against every row until nothing changes. Returns `false`
/// when some row cannot be met.
fn propagate(p: &Prepared, lo: &mut [i64], hi: &mut [i64]) -> bool {
    let mut changed = true;
    while changed {
        changed = false;
        for r in &p.rows {
            let dirs: &[bool] = match r.relation {
                Relation::Le => &[false],
                Relation::Ge => &[true],
                Relation::Eq => &[false, true],
            };
            for &negate in dirs {
                // as Σ a x ≤ b
                let sign = if negate { -big_int(1) } else { big_int(1) };
                let b = &r.rhs * &sign;
                let mut min_act = Big::zero();
                for (j, a) in &r.terms {
                    let a = a * &sign;
                    let end = if a.is_positive() { lo[*j] } else { hi[*j] };
                    min_act += a * big_int(end);
                }
                if min_act > b {
                    return false;
                }
                let slack = &b - &min_act;
                for (j, a) in &r.terms {
                    let a = a * &sign;
                    if a.is_positive() {
                        let cap = lo[*j].saturating_add(floor_big(&(&slack / &a)));
                        if cap < hi[*j] {
                            hi[*j] = cap;
                            changed = true;
                        }
                    } else if a.is_negative() {
                        let cap = hi[*j].saturating_sub(floor_big(&(&slack / -&a)));
                        if cap > lo[*j] {
                            lo[*j] = cap;
                            changed = true;
                        }
                    }
                    if lo[*j] > hi[*j] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Decides whether the program has an integer solution and returns one.
///
/// Depth-first branch and bound: every node tightens bounds by propagation,
/// is pruned when its LP relaxation is empty, and branches on a fractional
/// coordinate of the relaxation's point.
pub fn ilp_feasible(program: &IntegerProgram, cfg: &IlpConfig) -> Result<Option<Vec<i64>>> {
    let n = program.num_vars();
    if n > cfg.var_cap {
        return Err(Error::Resource {
            what: "integer variables",
            needed: n as u128,
            cap: cfg.var_cap as u128,
        });
    }
    let prepared = Prepared {
        rows: program
            .constraints
            .iter()
            .map(|c| Row {
                terms: c
                    .terms
                    .iter()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|&(j, a)| (j, big(a)))
                    .collect(),
                relation: c.relation,
                rhs: big(c.rhs),
            })
            .collect(),
    };
    let (lo0, hi0): (Vec<i64>, Vec<i64>) = program.bounds.iter().copied().unzip();
    let mut stack = vec![(lo0, hi0)];
    let mut nodes = 0u64;
    while let Some((mut lo, mut hi)) = stack.pop() {
        nodes += 1;
        if nodes > cfg.node_cap {
            return Err(Error::Resource {
                what: "branch-and-bound nodes",
                needed: nodes as u128,
                cap: cfg.node_cap as u128,
            });
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) || !propagate(&prepared, &mut lo, &mut hi) {
            continue;
        }
        if lo == hi {
            if program.is_satisfied(&lo) {
                return Ok(Some(lo));
            }
            continue;
        }
        let bounds: Vec<(Big, Big)> = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &h)| (big_int(l), big_int(h)))
            .collect();
        let Some(point) = lp_point(&bounds, &prepared.rows) else {
            continue;
        };
        match point.iter().position(|v| !v.is_integer()) {
            None => {
                let x: Vec<i64> = point.iter().map(floor_big).collect();
                if program.is_satisfied(&x) {
                    return Ok(Some(x));
                }
                // cannot happen with exact arithmetic, but stay complete
                let j = (0..n).find(|&j| lo[j] < hi[j]).expect("unfixed variable");
                branch(&mut stack, &lo, &hi, j, lo[j]);
            }
            Some(j) => branch(&mut stack, &lo, &hi, j, floor_big(&point[j])),
        }
    }
    Ok(None)
}

fn branch(stack: &mut Vec<(Vec<i64>, Vec<i64>)>, lo: &[i64], hi: &[i64], j: usize, at: i64) {
    let mut up_lo = lo.to_vec();
    up_lo[j] = at + 1;
    stack.push((up_lo, hi.to_vec()));
    let mut down_hi = hi.to_vec();
    down_hi[j] = at;
    stack.push((lo.to_vec(), down_hi));
}

/// Exhaustive search over the whole box; the reference for [`ilp_feasible`].
pub fn box_search(program: &IntegerProgram, cap: u128) -> Result<Option<Vec<i64>>> {
    let size = program
        .bounds
        .iter()
        .map(|(l, u)| (u - l + 1).max(0) as u128)
        .try_fold(1u128, |acc, w| acc.checked_mul(w))
        .unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::Resource {
            what: "box points",
            needed: size,
            cap,
        });
    }
    if size == 0 {
        return Ok(None);
    }
    let mut x: Vec<i64> = program.bounds.iter().map(|b| b.0).collect();
    loop {
        if program.is_satisfied(&x) {
            return Ok(Some(x));
        }
        let mut i = 0;
        loop {
            if i == x.len() {
                return Ok(None);
            }
            x[i] += 1;
            if x[i] <= program.bounds[i].1 {
                break;
            }
            x[i] = program.bounds[i].0;
            i += 1;
        }
    }
}
