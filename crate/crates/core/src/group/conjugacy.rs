use std::sync::Arc;

use super::{Group, GroupError};
use crate::arith::numtheory::lcm;

/// Class-level data shared by conjugacy computations, character tables and
/// class functions. Classes are ordered by size, ties broken by the BFS index of
/// their least element; class 0 is always the identity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStructure {
    pub order: u64,
    pub exponent: u64,
    pub sizes: Vec<u64>,
    pub centralizer_orders: Vec<u64>,
    pub rep_orders: Vec<u64>,
    pub inverse_class: Vec<usize>,
    /// `power_map[i][t]` is the class of `g_i^t` for `0 <= t < exponent`.
    pub power_map: Vec<Vec<usize>>,
    pub real: Vec<bool>,
}

impl ClassStructure {
    /// Assemble from stored fields (e.g. a table file), checking every invariant
    /// that can be checked without the group itself.
    pub fn from_parts(
        order: u64,
        exponent: u64,
        sizes: Vec<u64>,
        rep_orders: Vec<u64>,
        inverse_class: Vec<usize>,
        power_map: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let bad = |s: String| Err(GroupError::InvalidClasses(s));
        let k = sizes.len();
        if k == 0 || order == 0 || exponent == 0 {
            return bad("empty class data".into());
        }
        if rep_orders.len() != k || inverse_class.len() != k || power_map.len() != k {
            return bad("class vectors differ in length".into());
        }
        if sizes.iter().sum::<u64>() != order {
            return bad(format!("class sizes do not sum to {order}"));
        }
        if sizes.iter().any(|&s| s == 0 || !order.is_multiple_of(s)) {
            return bad("class sizes must divide the group order".into());
        }
        if sizes[0] != 1 || rep_orders[0] != 1 {
            return bad("class 0 must be the identity class".into());
        }
        if rep_orders.iter().copied().fold(1, lcm) != exponent {
            return bad("exponent is not the lcm of representative orders".into());
        }
        for i in 0..k {
            let inv = inverse_class[i];
            if inv >= k || inverse_class[inv] != i || sizes[inv] != sizes[i] {
                return bad(format!("inverse class map broken at class {i}"));
            }
            let row = &power_map[i];
            if row.len() as u64 != exponent || row.iter().any(|&c| c >= k) {
                return bad(format!("power map row {i} malformed"));
            }
            if row[0] != 0 || (exponent > 1 && row[1] != i) {
                return bad(format!("power map row {i} must start (0, {i})"));
            }
            let ord = (1..exponent).find(|&t| row[t as usize] == 0).unwrap_or(exponent);
            if ord != rep_orders[i] {
                return bad(format!("power map and representative order disagree at class {i}"));
            }
            if rep_orders[i] > 1 && row[(rep_orders[i] - 1) as usize] != inv {
                return bad(format!("power map and inverse map disagree at class {i}"));
            }
        }
        Ok(Self::assemble(order, exponent, sizes, rep_orders, inverse_class, power_map))
    }

    fn assemble(
        order: u64,
        exponent: u64,
        sizes: Vec<u64>,
        rep_orders: Vec<u64>,
        inverse_class: Vec<usize>,
        power_map: Vec<Vec<usize>>,
    ) -> Self {
        let centralizer_orders = sizes.iter().map(|s| order / s).collect();
        let real = inverse_class.iter().enumerate().map(|(i, &j)| i == j).collect();
        ClassStructure {
            order,
            exponent,
            sizes,
            centralizer_orders,
            rep_orders,
            inverse_class,
            power_map,
            real,
        }
    }

    pub fn class_count(&self) -> usize {
        self.sizes.len()
    }

    /// Indices of classes equal to their own inverse class.
    pub fn real_classes(&self) -> Vec<usize> {
        (0..self.class_count()).filter(|&i| self.real[i]).collect()
    }
}

/// Anything that carries the class layout of a group.
pub trait HasClasses {
    fn classes(&self) -> &Arc<ClassStructure>;
}

impl HasClasses for Arc<ClassStructure> {
    fn classes(&self) -> &Arc<ClassStructure> {
        self
    }
}

/// Conjugacy classes of an enumerated group, with element-level membership.
#[derive(Debug, Clone)]
pub struct ConjugacyData {
    classes: Arc<ClassStructure>,
    class_of: Vec<usize>,
    representatives: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl HasClasses for ConjugacyData {
    fn classes(&self) -> &Arc<ClassStructure> {
        &self.classes
    }
}

impl ConjugacyData {
    pub fn new(group: &Group) -> Self {
        let n = group.len();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; n];
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n)
                .map(|g| group.mul(group.mul(group.inv(g), x), g))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                assigned[y] = true;
            }
            orbits.push(orbit);
        }
        // orbits[i][0] is the least element, and orbits arrive in order of it
        orbits.sort_by_key(|o| (o.len(), o[0]));

        let mut class_of = vec![0; n];
        for (c, orbit) in orbits.iter().enumerate() {
            for &y in orbit {
                class_of[y] = c;
            }
        }
        let representatives: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
        let order = group.order();
        let exponent = group.exponent();
        let sizes = orbits.iter().map(|o| o.len() as u64).collect();
        let rep_orders = representatives.iter().map(|&r| group.element_order(r)).collect();
        let inverse_class = representatives
            .iter()
            .map(|&r| class_of[group.inv(r)])
            .collect();
        let power_map = representatives
            .iter()
            .map(|&r| {
                let mut acc = 0;
                (0..exponent)
                    .map(|_| {
                        let c = class_of[acc];
                        acc = group.mul(acc, r);
                        c
                    })
                    .collect()
            })
            .collect();
        let classes = Arc::new(ClassStructure::assemble(
            order,
            exponent,
            sizes,
            rep_orders,
            inverse_class,
            power_map,
        ));
        ConjugacyData {
            classes,
            class_of,
            representatives,
            members: orbits,
        }
    }

    pub fn class_count(&self) -> usize {
        self.classes.class_count()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn real_classes(&self) -> Vec<usize> {
        self.classes.real_classes()
    }
}

/// `a[l] = #{(x, y) ∈ K_i × K_j : xy = g_l}` for the fixed representative `g_l`.
pub fn class_mult_coefficients(group: &Group, cd: &ConjugacyData, i: usize, j: usize) -> Vec<u64> {
    cd.representatives()
        .iter()
        .map(|&g| {
            cd.members(i)
                .iter()
                .filter(|&&x| cd.class_of(group.mul(group.inv(x), g)) == j)
                .count() as u64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate, Catalog, DEFAULT_ELEMENT_CAP};

    fn load(name: &str) -> (Group, ConjugacyData) {
        let g = enumerate(Catalog::bundled().get(name).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        let cd = ConjugacyData::new(&g);
        (g, cd)
    }

    /// Brute-force class sizes: count elements conjugate to each element.
    fn brute_sizes(g: &Group) -> Vec<u64> {
        let n = g.len();
        let mut sizes: Vec<u64> = Vec::new();
        let mut done = vec![false; n];
        for x in 0..n {
            if done[x] {
                continue;
            }
            let mut size = 0;
            for y in 0..n {
                if (0..n).any(|h| g.mul(g.mul(g.inv(h), x), h) == y) {
                    done[y] = true;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn s3_classes() {
        let (g, cd) = load("S3");
        let c = cd.classes();
        assert_eq!(c.sizes, vec![1, 2, 3]);
        assert_eq!(c.centralizer_orders, vec![6, 3, 2]);
        assert_eq!(c.rep_orders, vec![1, 3, 2]);
        assert_eq!(cd.real_classes(), vec![0, 1, 2]);
        assert_eq!(brute_sizes(&g), vec![1, 2, 3]);
    }

    #[test]
    fn q8_and_abelian_classes() {
        let (_, q8) = load("Q8");
        assert_eq!(q8.classes().sizes, vec![1, 1, 2, 2, 2]);
        for name in ["C4", "C5", "C6"] {
            let (_, cd) = load(name);
            assert!(cd.classes().sizes.iter().all(|&s| s == 1), "{name}");
        }
    }

    #[test]
    fn real_class_examples() {
        let (_, c3) = load("C3");
        assert_eq!(c3.real_classes(), vec![0]);
        let (_, triv) = load("trivial");
        assert_eq!(triv.real_classes(), vec![0]);
    }

    #[test]
    fn class_invariants_on_catalog() {
        for spec in Catalog::bundled().specs() {
            let g = enumerate(spec, DEFAULT_ELEMENT_CAP).unwrap();
            let cd = ConjugacyData::new(&g);
            let c = cd.classes();
            assert_eq!(c.sizes.iter().sum::<u64>(), g.order());
            let mut sorted = c.sizes.clone();
            sorted.sort_unstable();
            if g.order() <= 24 {
                assert_eq!(brute_sizes(&g), sorted, "{}", spec.name);
            }
            for i in 0..cd.class_count() {
                assert_eq!(c.sizes[i] * c.centralizer_orders[i], g.order());
                assert_eq!(c.power_map[i][1 % c.exponent as usize], if c.exponent == 1 { 0 } else { i });
                assert_eq!(c.power_map[i][0], 0);
                assert_eq!(c.real[i], c.inverse_class[i] == i);
                assert_eq!(cd.members(i)[0], cd.representatives()[i]);
            }
            let rebuilt = ClassStructure::from_parts(
                c.order,
                c.exponent,
                c.sizes.clone(),
                c.rep_orders.clone(),
                c.inverse_class.clone(),
                c.power_map.clone(),
            )
            .unwrap();
            assert_eq!(&rebuilt, c.as_ref());
        }
    }

    #[test]
    fn deterministic_across_runs() {
        let (_, a) = load("S4");
        let (_, b) = load("S4");
        assert_eq!(a.classes(), b.classes());
        assert_eq!(a.representatives(), b.representatives());
    }

    #[test]
    fn class_coefficient_rules() {
        for name in ["S3", "D8", "A4", "S4"] {
            let (g, cd) = load(name);
            let k = cd.class_count();
            let sizes = &cd.classes().sizes;
            for j in 0..k {
                let a = class_mult_coefficients(&g, &cd, 0, j);
                let delta: Vec<u64> = (0..k).map(|l| u64::from(l == j)).collect();
                assert_eq!(a, delta);
            }
            for i in 0..k {
                for j in 0..k {
                    let a = class_mult_coefficients(&g, &cd, i, j);
                    let total: u64 = a.iter().zip(sizes).map(|(x, s)| x * s).sum();
                    assert_eq!(total, sizes[i] * sizes[j], "{name} {i} {j}");
                }
            }
        }
        let (g, cd) = load("S3");
        // transpositions are class 2; each squares to the identity
        assert_eq!(class_mult_coefficients(&g, &cd, 2, 2)[0], 3);
    }

    #[test]
    fn from_parts_rejects_corruption() {
        let (_, cd) = load("S3");
        let c = cd.classes();
        let mut sizes = c.sizes.clone();
        sizes[1] = 3;
        assert!(ClassStructure::from_parts(6, 6, sizes, c.rep_orders.clone(), c.inverse_class.clone(), c.power_map.clone()).is_err());
        let mut inv = c.inverse_class.clone();
        inv[1] = 2;
        assert!(ClassStructure::from_parts(6, 6, c.sizes.clone(), c.rep_orders.clone(), inv, c.power_map.clone()).is_err());
    }
}
