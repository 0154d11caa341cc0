use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TauError {
    #[error("inputs must have equal lengths, got {x} and {y}")]
    LengthMismatch { x: usize, y: usize },
    #[error("need at least 2 observations, got {0}")]
    TooShort(usize),
    #[error("rank correlation is undefined when an input is all ties")]
    Degenerate,
    #[error("inputs must not contain NaN")]
    NotComparable,
}

/// Kendall rank correlation with tie correction (the τ-b variant):
/// (concordant − discordant) / √((n₀ − ties_x)(n₀ − ties_y)) over all
/// observation pairs, where n₀ = n(n−1)/2.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<f64, TauError> {
    if x.len() != y.len() {
        return Err(TauError::LengthMismatch { x: x.len(), y: y.len() });
    }
    let n = x.len();
    if n < 2 {
        return Err(TauError::TooShort(n));
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(TauError::NotComparable);
    }

    let mut concordant = 0i64;
    let mut discordant = 0i64;
    let mut ties_x = 0i64;
    let mut ties_y = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = x[i] - x[j];
            let dy = y[i] - y[j];
            if dx == 0.0 {
                ties_x += 1;
            }
            if dy == 0.0 {
                ties_y += 1;
            }
            let product = dx * dy;
            if product > 0.0 {
                concordant += 1;
            } else if product < 0.0 {
                discordant += 1;
            }
        }
    }

    let n0 = (n * (n - 1) / 2) as i64;
    let denom = ((n0 - ties_x) as f64 * (n0 - ties_y) as f64).sqrt();
    if denom == 0.0 {
        return Err(TauError::Degenerate);
    }
    Ok((concordant - discordant) as f64 / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_rankings_score_one() {
        assert_eq!(kendall_tau(&[1.0, 2.0, 3.0, 4.0], &[10.0, 20.0, 30.0, 40.0]), Ok(1.0));
    }

    #[test]
    fn reversed_rankings_score_minus_one() {
        assert_eq!(kendall_tau(&[1.0, 2.0, 3.0, 4.0], &[4.0, 3.0, 2.0, 1.0]), Ok(-1.0));
    }

    #[test]
    fn one_swap_in_three_scores_a_third() {
        // Pairs: (1,2) and (1,3) concordant, (2,3) discordant → (2−1)/3.
        assert_eq!(kendall_tau(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]), Ok(1.0 / 3.0));
    }

    #[test]
    fn ties_shrink_the_denominator() {
        // x: no ties; y: one tied pair → τ-b = (C−D)/√(n0·(n0−1)).
        let tau = kendall_tau(&[1.0, 2.0, 3.0], &[1.0, 2.0, 2.0]).unwrap();
        let expected = 2.0 / (3.0f64 * 2.0).sqrt();
        assert!((tau - expected).abs() < 1e-15);
    }

    #[test]
    fn error_cases() {
        assert_eq!(
            kendall_tau(&[1.0, 2.0], &[1.0]),
            Err(TauError::LengthMismatch { x: 2, y: 1 })
        );
        assert_eq!(kendall_tau(&[1.0], &[1.0]), Err(TauError::TooShort(1)));
        assert_eq!(
            kendall_tau(&[5.0, 5.0, 5.0], &[1.0, 2.0, 3.0]),
            Err(TauError::Degenerate)
        );
        assert_eq!(
            kendall_tau(&[f64::NAN, 1.0], &[1.0, 2.0]),
            Err(TauError::NotComparable)
        );
    }

    #[test]
    fn symmetry_in_arguments() {
        let x = [3.0, 1.0, 4.0, 1.5, 9.0, 2.0];
        let y = [2.0, 7.0, 1.0, 8.0, 2.0, 8.0];
        assert_eq!(kendall_tau(&x, &y), kendall_tau(&y, &x));
    }
}
