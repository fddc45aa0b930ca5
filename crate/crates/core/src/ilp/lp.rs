//! Exact phase-one simplex with bounded variables, used to prune the
//! integer search. Only feasibility is decided; there is no objective.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::program::Relation;

pub(crate) type Big = BigRational;

pub(crate) fn big(r: crate::Rational) -> Big {
    Big::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub(crate) fn big_int(v: i64) -> Big {
    Big::from_integer(BigInt::from(v))
}

pub(crate) struct Row {
    pub terms: Vec<(usize, Big)>,
    pub relation: Relation,
    pub rhs: Big,
}

/// A point satisfying every row within the box, if one exists.
pub(crate) fn lp_point(bounds: &[(Big, Big)], rows: &[Row]) -> Option<Vec<Big>> {
    let nx = bounds.len();
    let nr = rows.len();
    let cols = nx + 2 * nr;
    let mut lb: Vec<Option<Big>> = Vec::with_capacity(cols);
    let mut ub: Vec<Option<Big>> = Vec::with_capacity(cols);
    let mut val: Vec<Big> = Vec::with_capacity(cols);
    for (l, u) in bounds {
        lb.push(Some(l.clone()));
        ub.push(Some(u.clone()));
        val.push(l.clone());
    }
    // slack s_i stands for the row activity
    for r in rows {
        let (l, u) = match r.relation {
            Relation::Le => (None, Some(r.rhs.clone())),
            Relation::Ge => (Some(r.rhs.clone()), None),
            Relation::Eq => (Some(r.rhs.clone()), Some(r.rhs.clone())),
        };
        lb.push(l);
        ub.push(u);
        val.push(r.rhs.clone());
    }
    let mut tab: Vec<Vec<Big>> = vec![vec![Big::zero(); cols]; nr];
    let mut basis = vec![0usize; nr];
    for (i, r) in rows.iter().enumerate() {
        let mut act = Big::zero();
        for (j, a) in &r.terms {
            act += a * &bounds[*j].0;
        }
        let gap = &r.rhs - act;
        let sign = if gap.is_negative() { -Big::one() } else { Big::one() };
        for (j, a) in &r.terms {
            tab[i][*j] += a * &sign;
        }
        tab[i][nx + i] = -sign.clone();
        tab[i][nx + nr + i] = Big::one();
        basis[i] = nx + nr + i;
        lb.push(Some(Big::zero()));
        ub.push(None);
        val.push(gap.abs());
    }
    let is_art = |j: usize| j >= nx + nr;
    let mut row_of: Vec<Option<usize>> = vec![None; cols];
    for (i, &b) in basis.iter().enumerate() {
        row_of[b] = Some(i);
    }

    loop {
        // reduced costs of the phase-one objective (sum of artificials)
        let mut entering = None;
        for j in 0..cols {
            if row_of[j].is_some() {
                continue;
            }
            let mut d = if is_art(j) { Big::one() } else { Big::zero() };
            for i in 0..nr {
                if is_art(basis[i]) && !tab[i][j].is_zero() {
                    d -= &tab[i][j];
                }
            }
            if d.is_negative() && ub[j].as_ref().is_none_or(|u| val[j] < *u) {
                entering = Some((j, 1));
                break;
            }
            if d.is_positive() && lb[j].as_ref().is_none_or(|l| val[j] > *l) {
                entering = Some((j, -1));
                break;
            }
        }
        let Some((j, dir)) = entering else { break };
        let dir_big = if dir > 0 { Big::one() } else { -Big::one() };

        // ratio test; `None` leaving row means the entering variable flips bound
        let mut best: Option<(Big, Option<usize>)> = None;
        let own = if dir > 0 {
            ub[j].as_ref().map(|u| u - &val[j])
        } else {
            lb[j].as_ref().map(|l| &val[j] - l)
        };
        if let Some(t) = own {
            best = Some((t, None));
        }
        for i in 0..nr {
            if tab[i][j].is_zero() {
                continue;
            }
            let rate = -(&tab[i][j] * &dir_big);
            let b = basis[i];
            let limit = if rate.is_positive() {
                ub[b].as_ref().map(|u| (u - &val[b]) / &rate)
            } else {
                lb[b].as_ref().map(|l| (&val[b] - l) / -&rate)
            };
            let Some(t) = limit else { continue };
            let better = match &best {
                None => true,
                Some((bt, brow)) => {
                    t < *bt || (t == *bt && brow.is_some_and(|r| basis[r] > b))
                }
            };
            if better {
                best = Some((t, Some(i)));
            }
        }
        let (theta, leave) = best.expect("phase-one objective is bounded below");
        val[j] += &dir_big * &theta;
        for i in 0..nr {
            if !tab[i][j].is_zero() {
                let rate = -(&tab[i][j] * &dir_big);
                let b = basis[i];
                val[b] += rate * &theta;
            }
        }
        let Some(r) = leave else { continue };
        let old = basis[r];
        let piv = tab[r][j].clone();
        for x in tab[r].iter_mut().filter(|x| !x.is_zero()) {
            *x = &*x / &piv;
        }
        let pivot_row = tab[r].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for c in 0..cols {
                if !pivot_row[c].is_zero() {
                    row[c] -= &f * &pivot_row[c];
                }
            }
        }
        basis[r] = j;
        row_of[old] = None;
        row_of[j] = Some(r);
    }

    if (nx + nr..cols).any(|j| val[j].is_positive()) {
        return None;
    }
    val.truncate(nx);
    Some(val)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> Big {
        big_int(v)
    }

    fn row(terms: &[(usize, i64)], relation: Relation, rhs: i64) -> Row {
        Row {
            terms: terms.iter().map(|&(j, a)| (j, b(a))).collect(),
            relation,
            rhs: b(rhs),
        }
    }

    fn check(bounds: &[(Big, Big)], rows: &[Row], x: &[Big]) {
        for (v, (l, u)) in x.iter().zip(bounds) {
            assert!(l <= v && v <= u);
        }
        for r in rows {
            let act: Big = r.terms.iter().map(|(j, a)| a * &x[*j]).sum();
            match r.relation {
                Relation::Le => assert!(act <= r.rhs),
                Relation::Ge => assert!(act >= r.rhs),
                Relation::Eq => assert_eq!(act, r.rhs),
            }
        }
    }

    #[test]
    fn fractional_point_found() {
        let bounds = vec![(b(0), b(3)), (b(0), b(3))];
        let rows = vec![
            row(&[(0, 2), (1, 2)], Relation::Eq, 3),
            row(&[(0, 1), (1, -1)], Relation::Ge, 0),
        ];
        let x = lp_point(&bounds, &rows).unwrap();
        check(&bounds, &rows, &x);
    }

    #[test]
    fn infeasible_detected() {
        let bounds = vec![(b(0), b(1))];
        assert!(lp_point(&bounds, &[row(&[(0, 1)], Relation::Ge, 2)]).is_none());
        let rows = vec![row(&[(0, 1)], Relation::Le, 0), row(&[(0, 1)], Relation::Ge, 1)];
        assert!(lp_point(&bounds, &rows).is_none());
    }

    #[test]
    fn empty_and_constant_rows() {
        assert_eq!(lp_point(&[], &[]), Some(vec![]));
        assert!(lp_point(&[], &[row(&[], Relation::Le, 0)]).is_some());
        assert!(lp_point(&[], &[row(&[], Relation::Ge, 1)]).is_none());
    }

    #[test]
    fn needs_upper_bounds_respected() {
        let bounds = vec![(b(0), b(1)), (b(0), b(1)), (b(0), b(1))];
        let rows = vec![row(&[(0, 1), (1, 1), (2, 1)], Relation::Ge, 3)];
        let x = lp_point(&bounds, &rows).unwrap();
        assert_eq!(x, vec![b(1), b(1), b(1)]);
        let rows = vec![row(&[(0, 1), (1, 1), (2, 1)], Relation::Ge, 4)];
        assert!(lp_point(&bounds, &rows).is_none());
    }
}
