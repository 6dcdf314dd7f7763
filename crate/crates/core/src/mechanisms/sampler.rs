use rand::Rng;

use crate::designs::IncidenceStructure;
use crate::scalar::Scalar;

/// Inverse-CDF sampling from a two-valued row: `α` incident outputs of
/// weight `e^ε` and `size − α` others of weight 1.
#[derive(Debug, Clone)]
pub(crate) struct ClassSampler {
    size: usize,
    /// For each point, ascending positions (within the class) of incident blocks.
    incident: Vec<Vec<usize>>,
}

impl ClassSampler {
    pub fn new(design: &IncidenceStructure, class: &[usize]) -> Self {
        let mut incident = vec![Vec::new(); design.v()];
        for (pos, &j) in class.iter().enumerate() {
            for &x in design.block(j) {
                incident[x].push(pos);
            }
        }
        Self {
            size: class.len(),
            incident,
        }
    }

    /// Returns a position in the class.
    pub fn sample<F: Scalar, R: Rng + ?Sized>(&self, x: usize, exp_epsilon: F, rng: &mut R) -> usize {
        let hits = &self.incident[x];
        let alpha = hits.len();
        let e = exp_epsilon.as_f64();
        let heavy = alpha as f64 * e;
        let light = (self.size - alpha) as f64;
        let w = rng.gen::<f64>() * (heavy + light);
        if w < heavy || light == 0.0 {
            let idx = ((w / e) as usize).min(alpha - 1);
            hits[idx]
        } else {
            let idx = ((w - heavy) as usize).min(self.size - alpha - 1);
            nth_missing(hits, idx)
        }
    }
}

/// The `idx`-th non-negative integer absent from the ascending list `hits`.
fn nth_missing(hits: &[usize], idx: usize) -> usize {
    let mut candidate = idx;
    for &h in hits {
        if h <= candidate {
            candidate += 1;
        } else {
            break;
        }
    }
    candidate
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nth_missing_skips_listed_values() {
        let hits = [0, 2, 3, 7];
        let missing: Vec<usize> = (0..5).map(|i| nth_missing(&hits, i)).collect();
        assert_eq!(missing, vec![1, 4, 5, 6, 8]);
        assert_eq!(nth_missing(&[], 3), 3);
    }
}
