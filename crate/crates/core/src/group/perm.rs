use std::fmt;

use super::GroupError;

/// A permutation of `{1..d}`, stored 0-based.
///
/// Products compose left to right: `a.compose(&b)` applies `a` first, then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// From 0-based images; rejects anything that is not a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or(GroupError::PointOutOfRange(i as usize + 1))?;
            if *slot {
                return Err(GroupError::RepeatedPoint(i as usize + 1));
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    /// Parse disjoint cycles such as `(1 2 3)(4 5)` acting on `degree` points.
    /// Points may be separated by spaces or commas; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, GroupError> {
        let malformed = |why: &str| GroupError::Malformed(format!("{text:?}: {why}"));
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(malformed("empty cycle string"));
        }
        while !rest.is_empty() {
            let body_end = rest
                .strip_prefix('(')
                .ok_or_else(|| malformed("expected '('"))?
                .find(')')
                .ok_or_else(|| malformed("unclosed cycle"))?;
            let body = &rest[1..1 + body_end];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let point: usize = tok
                    .parse()
                    .map_err(|_| malformed(&format!("bad point {tok:?}")))?;
                if point == 0 || point > degree {
                    return Err(GroupError::PointOutOfRange(point));
                }
                if used[point - 1] {
                    return Err(GroupError::RepeatedPoint(point));
                }
                used[point - 1] = true;
                cycle.push(point as u32 - 1);
            }
            for (k, &pt) in cycle.iter().enumerate() {
                images[pt as usize] = cycle[(k + 1) % cycle.len()];
            }
            rest = rest[body_end + 2..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Nontrivial cycles, each starting at its smallest point (1-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| crate::arith::numtheory::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(Permutation::parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        let swap = Permutation::parse_cycles("(1 2)", 3).unwrap();
        assert_eq!(swap.images(), &[1, 0, 2]);
        assert_eq!(
            Permutation::parse_cycles("(1 2)(2 3)", 3),
            Err(GroupError::RepeatedPoint(2))
        );
        assert_eq!(
            Permutation::parse_cycles("(1 4)", 3),
            Err(GroupError::PointOutOfRange(4))
        );
        assert!(matches!(
            Permutation::parse_cycles("1 2", 3),
            Err(GroupError::Malformed(_))
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1 2", 3),
            Err(GroupError::Malformed(_))
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1 x)", 3),
            Err(GroupError::Malformed(_))
        ));
        assert_eq!(
            Permutation::parse_cycles("(1,2,3)", 3).unwrap(),
            Permutation::parse_cycles("(1 2 3)", 3).unwrap()
        );
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.compose(&b).apply(0), 2);
        assert_eq!(a.compose(&b).to_string(), "(1 3 2)");
        assert_eq!(a.compose(&b).order(), 3);
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 5]).is_err());
        assert!(Permutation::from_images(vec![1, 0]).is_ok());
    }

    proptest! {
        #[test]
        fn display_parses_back(perm in Just((0u32..7).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Permutation::from_images(perm).unwrap();
            let back = Permutation::parse_cycles(&p.to_string(), 7).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert!(p.compose(&p.inverse()).is_identity());
        }
    }
}
