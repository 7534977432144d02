use super::{Group, GroupError};

/// Largest |G| for which single commutators are counted.
pub const COMMUTATOR_CAP_ONE: u64 = 24;
/// Largest |G| for which products of two commutators are counted.
pub const COMMUTATOR_CAP_TWO: u64 = 24;

/// Number of tuples `(a1, b1, …, an, bn)` with `[a1,b1]⋯[an,bn] = target`, by
/// exhaustive enumeration. Only `n ∈ {1, 2}` is supported.
pub fn count_commutator_solutions(group: &Group, target: usize, n: u32) -> Result<u64, GroupError> {
    let cap = match n {
        1 => COMMUTATOR_CAP_ONE,
        2 => COMMUTATOR_CAP_TWO,
        _ => {
            return Err(GroupError::InvalidSpec(format!(
                "commutator products of length {n} are not supported"
            )))
        }
    };
    if group.order() > cap {
        return Err(GroupError::CapExceeded { cap: cap as usize });
    }
    let size = group.len();
    let comm: Vec<usize> = (0..size * size)
        .map(|ab| group.commutator(ab / size, ab % size))
        .collect();
    let count = if n == 1 {
        comm.iter().filter(|&&c| c == target).count()
    } else {
        let mut total = 0;
        for &c1 in &comm {
            for &c2 in &comm {
                if group.mul(c1, c2) == target {
                    total += 1;
                }
            }
        }
        total
    };
    Ok(count as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate, Catalog, ConjugacyData, DEFAULT_ELEMENT_CAP};

    #[test]
    fn s3_counts() {
        let g = enumerate(Catalog::bundled().get("S3").unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        let cd = ConjugacyData::new(&g);
        let three_cycle = cd.representatives()[1];
        let transposition = cd.representatives()[2];
        assert_eq!(count_commutator_solutions(&g, 0, 1).unwrap(), 18);
        assert_eq!(count_commutator_solutions(&g, transposition, 1).unwrap(), 0);
        assert_eq!(count_commutator_solutions(&g, three_cycle, 1).unwrap(), 9);
        // every quadruple lands somewhere
        let all: u64 = (0..6).map(|t| count_commutator_solutions(&g, t, 2).unwrap()).sum();
        assert_eq!(all, 6u64.pow(4));
    }

    #[test]
    fn caps_and_lengths() {
        let a5 = enumerate(Catalog::bundled().get("A5").unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        assert!(matches!(
            count_commutator_solutions(&a5, 0, 1),
            Err(GroupError::CapExceeded { .. })
        ));
        let c2 = enumerate(Catalog::bundled().get("C2").unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        assert!(count_commutator_solutions(&c2, 0, 3).is_err());
        // abelian: every pair commutes
        assert_eq!(count_commutator_solutions(&c2, 0, 1).unwrap(), 4);
    }
}
