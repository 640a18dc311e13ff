/// Mean Euclidean distance of the positions to their centroid.
///
/// Returns 0 for an empty population.
pub fn diversity<'a, I>(positions: I) -> f64
where
    I: IntoIterator<Item = &'a [f64]>,
    I::IntoIter: Clone,
{
    let iter = positions.into_iter();
    let mut count = 0usize;
    let mut centroid: Vec<f64> = Vec::new();
    for x in iter.clone() {
        if centroid.is_empty() {
            centroid.resize(x.len(), 0.0);
        }
        for (c, v) in centroid.iter_mut().zip(x) {
            *c += v;
        }
        count += 1;
    }
    if count == 0 {
        return 0.0;
    }
    let n = count as f64;
    centroid.iter_mut().for_each(|c| *c /= n);
    let total: f64 = iter
        .map(|x| {
            x.iter()
                .zip(&centroid)
                .map(|(v, c)| (v - c) * (v - c))
                .sum::<f64>()
                .sqrt()
        })
        .sum();
    total / n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn div(points: &[Vec<f64>]) -> f64 {
        diversity(points.iter().map(Vec::as_slice))
    }

    #[test]
    fn identical_points_have_zero_diversity() {
        assert_eq!(div(&vec![vec![1.0, 2.0]; 5]), 0.0);
        assert_eq!(div(&[]), 0.0);
    }

    #[test]
    fn symmetric_pair() {
        assert_eq!(div(&[vec![0.0], vec![2.0]]), 1.0);
    }

    #[test]
    fn right_triangle() {
        // centroid (1, 4/3)
        let want = (5.0 / 3.0 + 52f64.sqrt() / 3.0 + 73f64.sqrt() / 3.0) / 3.0;
        let got = div(&[vec![0.0, 0.0], vec![3.0, 0.0], vec![0.0, 4.0]]);
        assert!((got - want).abs() < 1e-14);
        assert!((got - 2.3061).abs() < 1e-4);
    }

    #[test]
    fn translation_invariant_and_scale_linear() {
        let pts = vec![
            vec![0.5, -1.0, 3.0],
            vec![2.0, 2.0, 2.0],
            vec![-4.0, 0.0, 1.0],
        ];
        let base = div(&pts);
        let moved: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| p.iter().map(|v| v + 17.0).collect())
            .collect();
        let scaled: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| p.iter().map(|v| v * 3.0).collect())
            .collect();
        assert!((div(&moved) - base).abs() < 1e-12);
        assert!((div(&scaled) - 3.0 * base).abs() < 1e-12);
    }
}
