//! Random instances.

use maxplus_transience::{Graph, Matrix, Vector, Weight};
use rand::Rng;

use crate::error::{CliError, CliResult};

const MAX_ATTEMPTS: usize = 100_000;

/// Parses `LO..HI`.
pub fn parse_range(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text.split_once("..").ok_or_else(|| format!("expected LO..HI, got {text:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower end {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper end {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// An `n × n` matrix whose entries are finite with probability `density`, drawn
/// until its graph is strongly connected.
pub fn irreducible_matrix<R: Rng>(rng: &mut R, n: usize, density: f64, (lo, hi): (i64, i64)) -> CliResult<Matrix> {
    if n == 0 {
        return Err(CliError::Input("at least one node is needed".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(CliError::Input(format!("density must lie in (0, 1], got {density}")));
    }
    for _ in 0..MAX_ATTEMPTS {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| if rng.gen_bool(density) { Weight::int(rng.gen_range(lo..=hi)) } else { Weight::Bottom })
                    .collect()
            })
            .collect();
        let a = Matrix::from_rows(rows)?;
        let g = Graph::from_matrix(&a, None)?;
        if g.is_nontrivial() && g.is_strongly_connected() {
            return Ok(a);
        }
    }
    Err(CliError::Input(format!(
        "no strongly connected graph on {n} nodes at density {density} after {MAX_ATTEMPTS} draws"
    )))
}

/// Integer vector with entries in `[0, spread]`.
pub fn integer_vector<R: Rng>(rng: &mut R, n: usize, spread: i64) -> Vector {
    Vector::new((0..n).map(|_| Weight::int(rng.gen_range(0..=spread))).collect()).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-3..3"), Ok((-3, 3)));
        assert!(parse_range("3..-3").is_err());
        assert!(parse_range("3").is_err());
    }

    #[test]
    fn generation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = irreducible_matrix(&mut rng, 2, 1.0, (-1, 0)).unwrap();
        assert!(a.is_finite_everywhere());
        assert!(irreducible_matrix(&mut rng, 3, 0.0, (0, 0)).is_err());
        assert!(irreducible_matrix(&mut rng, 0, 0.5, (0, 0)).is_err());
    }
}
