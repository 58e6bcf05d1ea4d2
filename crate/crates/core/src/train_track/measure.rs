use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{Side, TrackError, TrainTrack};
use crate::exact::Rational;
use crate::lp;

/// Branch weights keyed by branch index. Stored absolutely; every membership
/// question asked of a measure is invariant under positive scaling.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Measure {
    pub weights: BTreeMap<usize, Rational>,
}

impl Measure {
    pub fn from_vec(weights: Vec<Rational>) -> Self {
        Self {
            weights: weights.into_iter().enumerate().collect(),
        }
    }

    pub fn from_ints(weights: &[i64]) -> Self {
        Self::from_vec(weights.iter().map(|&w| crate::exact::int(w)).collect())
    }

    pub fn zero(branches: usize) -> Self {
        Self::from_vec(vec![Rational::zero(); branches])
    }

    pub fn get(&self, branch: usize) -> Option<&Rational> {
        self.weights.get(&branch)
    }

    fn dense(&self, t: &TrainTrack) -> Result<Vec<Rational>, TrackError> {
        (0..t.branch_count())
            .map(|b| {
                let w = self
                    .weights
                    .get(&b)
                    .ok_or_else(|| TrackError::MissingWeight(t.branch(b).name.clone()))?;
                if w.is_negative() {
                    return Err(TrackError::NegativeWeight(t.branch(b).name.clone()));
                }
                Ok(w.clone())
            })
            .collect()
    }
}

/// Row of the switch condition at `v`: `+1` per incoming half-branch, `-1`
/// per outgoing one, accumulated per branch.
fn switch_row(t: &TrainTrack, v: usize) -> Vec<i64> {
    let mut row = vec![0i64; t.branch_count()];
    for hb in t.side(v, Side::In) {
        row[hb.branch] += 1;
    }
    for hb in t.side(v, Side::Out) {
        row[hb.branch] -= 1;
    }
    row
}

/// Whether `m` satisfies the switch condition at every switch.
pub fn check_measure(t: &TrainTrack, m: &Measure) -> Result<bool, TrackError> {
    let w = m.dense(t)?;
    Ok((0..t.switch_count()).all(|v| {
        let row = switch_row(t, v);
        let total: Rational = row
            .iter()
            .zip(&w)
            .filter(|(c, _)| **c != 0)
            .map(|(&c, x)| x * Rational::from_integer(c.into()))
            .sum();
        total.is_zero()
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    pub recurrent: bool,
    /// Measure with every weight `>= 1` when recurrent.
    pub witness: Option<Measure>,
}

/// Decides whether some transverse measure is positive on every branch.
///
/// By scaling this is the exact feasibility of `{switch conditions, w >= 1}`;
/// substituting `w = 1 + u` leaves `A u = -A·1, u >= 0`.
pub fn is_recurrent(t: &TrainTrack) -> Recurrence {
    let nb = t.branch_count();
    let mut a = Vec::with_capacity(t.switch_count());
    let mut b = Vec::with_capacity(t.switch_count());
    for v in 0..t.switch_count() {
        let row = switch_row(t, v);
        let rhs: i64 = -row.iter().sum::<i64>();
        a.push(row.into_iter().map(|c| Rational::from_integer(c.into())).collect());
        b.push(Rational::from_integer(rhs.into()));
    }
    match lp::feasible_point(&a, &b, nb).point() {
        Some(u) => {
            let w = u.into_iter().map(|x| x + Rational::one()).collect();
            Recurrence {
                recurrent: true,
                witness: Some(Measure::from_vec(w)),
            }
        }
        None => Recurrence {
            recurrent: false,
            witness: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn zero_measure_is_valid() {
        let t = barbell();
        assert!(check_measure(&t, &Measure::zero(3)).unwrap());
    }

    #[test]
    fn barbell_route_cover() {
        // The route l0, bar, l1, bar covers the bar twice.
        let t = barbell();
        assert!(check_measure(&t, &Measure::from_ints(&[1, 2, 1])).unwrap());
        assert!(!check_measure(&t, &Measure::from_ints(&[1, 1, 1])).unwrap());
        let r = is_recurrent(&t);
        assert!(r.recurrent);
        let w = r.witness.unwrap();
        assert!(check_measure(&t, &w).unwrap());
        assert!(w.weights.values().all(|x| *x >= Rational::one()));
    }

    #[test]
    fn trivalent_mismatch() {
        // Switch 0 has incoming y (weight 2) and outgoing x, z (weights 1, 2).
        let t = punctured_torus();
        assert!(!check_measure(&t, &Measure::from_ints(&[1, 2, 2])).unwrap());
        assert!(check_measure(&t, &Measure::from_ints(&[1, 3, 2])).unwrap());
    }

    #[test]
    fn missing_and_negative_weights() {
        let t = barbell();
        let mut m = Measure::from_ints(&[1, 2, 1]);
        m.weights.remove(&1);
        assert_eq!(check_measure(&t, &m), Err(TrackError::MissingWeight("bar".into())));
        assert!(matches!(
            check_measure(&t, &Measure::from_ints(&[1, -2, 1])),
            Err(TrackError::NegativeWeight(_))
        ));
    }

    #[test]
    fn dead_end_is_not_recurrent() {
        // v0: l0 passes through with the bar splitting off; the switch
        // condition forces the bar and everything behind it to zero.
        let t = TrainTrack::new(
            names(2),
            vec![
                br("l0", ep(0, "out", 0), ep(0, "in", 0)),
                br("bar", ep(0, "out", 1), ep(1, "in", 0)),
                br("m", ep(1, "out", 0), ep(1, "in", 1)),
                br("l1", ep(1, "out", 1), ep(1, "out", 2)),
            ],
        )
        .unwrap();
        assert!(!is_recurrent(&t).recurrent);
    }
}
