//! Finite subgroups of the unit quaternions, generated by breadth-first
//! closure over exact arithmetic.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::quat::ExactQuat;
use crate::weyl::WeylElement;
use crate::Result;

/// Default bound on the closure size before generation gives up.
pub const DEFAULT_GENERATION_BOUND: usize = 1000;

/// A finite subgroup of the unit 3-sphere, with a deterministic element
/// order: insertion order of the breadth-first closure, identity first,
/// right-multiplying by the generators in the order given.
pub struct FiniteSubgroup {
    name: String,
    elements: Vec<ExactQuat>,
    index: BTreeMap<ExactQuat, usize>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteSubgroup {
    pub fn generate(name: &str, generators: &[ExactQuat], bound: usize) -> Result<Self> {
        for g in generators {
            if !g.is_unit() {
                return Err(Error::NonUnitGenerator);
            }
        }
        let mut elements = vec![ExactQuat::one()];
        let mut index = BTreeMap::new();
        index.insert(ExactQuat::one(), 0usize);
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in generators {
                let next = current.mul(g);
                if !index.contains_key(&next) {
                    if elements.len() >= bound {
                        return Err(Error::NotFiniteWithinBound { bound });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut mul = vec![0usize; n * n];
        let mut inv = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                let p = elements[i].mul(&elements[j]);
                let k = *index.get(&p).ok_or(Error::NotInGroup)?;
                mul[i * n + j] = k;
                if k == 0 {
                    inv[i] = j;
                }
            }
        }
        Ok(FiniteSubgroup {
            name: name.to_string(),
            elements,
            index,
            mul,
            inv,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ExactQuat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ExactQuat {
        &self.elements[i]
    }

    pub fn index_of(&self, q: &ExactQuat) -> Option<usize> {
        self.index.get(q).copied()
    }

    pub fn contains(&self, q: &ExactQuat) -> bool {
        self.index.contains_key(q)
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.elements.len() + j]
    }

    pub fn inv_index(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// True when `g h g^-1` stays in `self` for every `g` of `ambient`.
    pub fn is_normal_in(&self, ambient: &FiniteSubgroup) -> bool {
        ambient.elements.iter().all(|g| {
            let gi = g.inverse().expect("group elements are units");
            self.elements
                .iter()
                .all(|h| self.contains(&g.mul(h).mul(&gi)))
        })
    }
}

/// The quaternion group `Q8 = <i, j>`.
pub fn q8() -> FiniteSubgroup {
    FiniteSubgroup::generate("Q8", &[ExactQuat::i(), ExactQuat::j()], 16)
        .expect("Q8 closes at order 8")
}

/// The binary octahedral group `O = <tau_i, tau_j>` of order 48, together
/// with the labels of its `Q8`-cosets in the Weyl group `S3`.
pub struct OctahedralGroup {
    group: FiniteSubgroup,
    labels: Vec<WeylElement>,
}

/// Generates `O` and propagates coset labels along the closure:
/// `tau_i` maps to `s_beta` and `tau_j` to `w0`. Label consistency at every
/// rediscovered element amounts to checking that the assignment extends to
/// a homomorphism, so a clash panics rather than returning a wrong table.
pub fn octahedral() -> OctahedralGroup {
    let gens = [ExactQuat::tau_i(), ExactQuat::tau_j()];
    let images = [WeylElement::s_beta(), WeylElement::w0()];
    let group = FiniteSubgroup::generate("O", &gens, DEFAULT_GENERATION_BOUND)
        .expect("the binary octahedral group closes at order 48");
    let n = group.order();
    let mut labels: Vec<Option<WeylElement>> = vec![None; n];
    labels[0] = Some(WeylElement::identity());
    let mut head = 0;
    let mut order = vec![0usize];
    while head < order.len() {
        let i = order[head];
        head += 1;
        let li = labels[i].expect("visited elements are labeled");
        for (g, img) in gens.iter().zip(images) {
            let gi = group.index_of(g).expect("generator belongs to the group");
            let j = group.mul_index(i, gi);
            let lj = li * img;
            match labels[j] {
                None => {
                    labels[j] = Some(lj);
                    order.push(j);
                }
                Some(existing) => assert_eq!(
                    existing, lj,
                    "coset labels must be consistent along relations"
                ),
            }
        }
    }
    let labels = labels
        .into_iter()
        .map(|l| l.expect("closure visits every element"))
        .collect();
    OctahedralGroup { group, labels }
}

impl OctahedralGroup {
    pub fn group(&self) -> &FiniteSubgroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn elements(&self) -> &[ExactQuat] {
        self.group.elements()
    }

    /// The coset map `O -> O/Q8 = S3`.
    pub fn coset_label(&self, q: &ExactQuat) -> Result<WeylElement> {
        let i = self.group.index_of(q).ok_or(Error::NotInGroup)?;
        Ok(self.labels[i])
    }

    pub fn coset_label_by_index(&self, i: usize) -> WeylElement {
        self.labels[i]
    }
}
