use super::{verify_resolution, Resolution};
use crate::designs::{complete_design_with_cap, subset_rank, IncidenceStructure, DEFAULT_BLOCK_CAP};
use crate::error::{Error, Result};

/// Orbits of `Z/vZ` acting on the `(v, k)`-complete design by cyclic shift
/// `x ↦ x + 1 mod v`.
///
/// Each orbit starts at its lowest-indexed block and lists the successive
/// shifts; orbits are ordered by that first block.
pub fn cyclic_shift_resolution(v: usize, k: usize) -> Result<(IncidenceStructure, Resolution)> {
    cyclic_shift_resolution_with_cap(v, k, DEFAULT_BLOCK_CAP)
}

pub fn cyclic_shift_resolution_with_cap(
    v: usize,
    k: usize,
    max_blocks: u64,
) -> Result<(IncidenceStructure, Resolution)> {
    let design = complete_design_with_cap(v, k, max_blocks)?;
    let mut visited = vec![false; design.b()];
    let mut orbits = Vec::new();
    let mut shifted = Vec::with_capacity(k);
    for start in 0..design.b() {
        if visited[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut j = start;
        while !visited[j] {
            visited[j] = true;
            orbit.push(j);
            shifted.clear();
            shifted.extend(design.block(j).iter().map(|&x| (x + 1) % v));
            shifted.sort_unstable();
            j = subset_rank(v, &shifted) as usize;
        }
        debug_assert_eq!(j, start);
        orbits.push(orbit);
    }
    let resolution = verify_resolution(&design, &orbits)?
        .map_err(|violation| Error::Internal(format!("cyclic orbits failed verification: {violation}")))?;
    Ok((design, resolution))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_two_orbits_match_worked_example() {
        let (_, r) = cyclic_shift_resolution(4, 2).unwrap();
        // {M1, M4, M6, M3} and {M2, M5} in 1-based column labels
        assert_eq!(r.classes(), &[vec![0, 3, 5, 2], vec![1, 4]]);
        assert_eq!(r.alphas(), &[2, 1]);
    }

    #[test]
    fn five_two_has_two_full_orbits() {
        let (_, r) = cyclic_shift_resolution(5, 2).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.classes().iter().all(|c| c.len() == 5));
        assert_eq!(r.alphas(), &[2, 2]);
    }

    #[test]
    fn six_three_orbit_sizes() {
        let (design, r) = cyclic_shift_resolution(6, 3).unwrap();
        let mut sizes: Vec<usize> = r.classes().iter().map(Vec::len).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 20);
        assert!(sizes.iter().all(|s| [2, 3, 6].contains(s)));
        // 101010 and 010101 form the only short orbit
        let alternating = r
            .classes()
            .iter()
            .find(|c| c.len() == 2)
            .map(|c| c.iter().map(|&j| design.block(j).to_vec()).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(alternating, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 6, 6, 6]);
    }

    #[test]
    fn orbit_sizes_divide_v() {
        for v in 2..=12 {
            for k in 1..v {
                let (_, r) = cyclic_shift_resolution(v, k).unwrap();
                for class in r.classes() {
                    assert_eq!(v % class.len(), 0);
                    assert_eq!((k * class.len()) % v, 0);
                }
            }
        }
    }
}
