//! The Weyl group of type A2: the symmetric group on three letters,
//! generated by the two simple reflections.

use std::fmt;

/// A generator letter of the Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    Alpha,
    Beta,
}

/// An element of `S3`, stored as the permutation it induces on `{0,1,2}`.
///
/// `s_alpha` swaps `0,1` and `s_beta` swaps `1,2`, matching the action of
/// the lifted representative matrices on coordinate axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement([u8; 3]);

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement([0, 1, 2])
    }

    pub fn s_alpha() -> Self {
        WeylElement([1, 0, 2])
    }

    pub fn s_beta() -> Self {
        WeylElement([0, 2, 1])
    }

    /// The longest element `w0 = s_a s_b s_a = s_b s_a s_b`.
    pub fn w0() -> Self {
        Self::s_alpha() * Self::s_beta() * Self::s_alpha()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0u8; 3];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        WeylElement(inv)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// All six elements, in the fixed enumeration
    /// `1, s_a, s_b, s_a s_b, s_b s_a, w0` used for indexing everywhere.
    pub fn all() -> [WeylElement; 6] {
        let a = Self::s_alpha();
        let b = Self::s_beta();
        [Self::identity(), a, b, a * b, b * a, Self::w0()]
    }

    /// Position in the [`WeylElement::all`] enumeration.
    pub fn index(&self) -> usize {
        Self::all()
            .iter()
            .position(|w| w == self)
            .expect("every permutation of three letters is listed")
    }

    /// A reduced word for the element.
    pub fn word(&self) -> &'static [Gen] {
        const WORDS: [&[Gen]; 6] = [
            &[],
            &[Gen::Alpha],
            &[Gen::Beta],
            &[Gen::Alpha, Gen::Beta],
            &[Gen::Beta, Gen::Alpha],
            &[Gen::Alpha, Gen::Beta, Gen::Alpha],
        ];
        WORDS[self.index()]
    }

    pub fn name(&self) -> &'static str {
        const NAMES: [&str; 6] = ["1", "s_a", "s_b", "s_ab", "s_ba", "w0"];
        NAMES[self.index()]
    }
}

/// Composition: `(v * w)(x) = v(w(x))`, so products read like the matrix
/// products of the lifted representatives.
impl std::ops::Mul for WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: WeylElement) -> WeylElement {
        WeylElement([
            self.0[rhs.0[0] as usize],
            self.0[rhs.0[1] as usize],
            self.0[rhs.0[2] as usize],
        ])
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The full group with its multiplication and inverse tables over the
/// canonical enumeration; the homology module consumes these indices.
pub struct WeylGroup {
    elements: [WeylElement; 6],
}

impl WeylGroup {
    pub fn new() -> Self {
        WeylGroup {
            elements: WeylElement::all(),
        }
    }

    pub fn order(&self) -> usize {
        6
    }

    pub fn elements(&self) -> &[WeylElement; 6] {
        &self.elements
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        (self.elements[i] * self.elements[j]).index()
    }

    pub fn inv_index(&self, i: usize) -> usize {
        self.elements[i].inverse().index()
    }
}

impl Default for WeylGroup {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coxeter_relations() {
        let a = WeylElement::s_alpha();
        let b = WeylElement::s_beta();
        let e = WeylElement::identity();
        assert_eq!(a * a, e);
        assert_eq!(b * b, e);
        let ab = a * b;
        assert_eq!(ab * ab * ab, e);
        assert_eq!(a * b * a, b * a * b);
        assert_eq!(WeylElement::w0(), a * b * a);
    }

    #[test]
    fn six_distinct_elements_with_inverses() {
        let all = WeylElement::all();
        for (i, w) in all.iter().enumerate() {
            assert_eq!(w.index(), i);
            assert_eq!(*w * w.inverse(), WeylElement::identity());
        }
        for i in 0..6 {
            for j in (i + 1)..6 {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn words_multiply_out() {
        for w in WeylElement::all() {
            let mut acc = WeylElement::identity();
            for g in w.word() {
                acc = acc
                    * match g {
                        Gen::Alpha => WeylElement::s_alpha(),
                        Gen::Beta => WeylElement::s_beta(),
                    };
            }
            assert_eq!(acc, w);
        }
    }
}
