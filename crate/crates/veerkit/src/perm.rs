use std::fmt;

/// A permutation of {0,1,2,3}, stored as the image of each point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4(pub [u8; 4]);

/// All 24 permutations in lexicographic order of their image sequences.
pub const ORDERED_S4: [Perm4; 24] = {
    let mut out = [Perm4([0, 1, 2, 3]); 24];
    let mut k = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                let mut d = 0;
                while d < 4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out[k] = Perm4([a, b, c, d]);
                        k += 1;
                    }
                    d += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn inverse(self) -> Perm4 {
        let mut out = [0u8; 4];
        for i in 0..4 {
            out[self.0[i] as usize] = i as u8;
        }
        Perm4(out)
    }

    /// `self.compose(other)` maps i to self(other(i)).
    pub fn compose(self, other: Perm4) -> Perm4 {
        let mut out = [0u8; 4];
        for i in 0..4 {
            out[i] = self.0[other.0[i] as usize];
        }
        Perm4(out)
    }

    pub fn sign(self) -> i32 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Position in [`ORDERED_S4`].
    pub fn ordered_index(self) -> usize {
        ORDERED_S4.iter().position(|&p| p == self).expect("valid permutation")
    }

    pub fn from_ordered_index(i: usize) -> Option<Perm4> {
        ORDERED_S4.get(i).copied()
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_table_is_sorted_and_complete() {
        for w in ORDERED_S4.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(ORDERED_S4[0], Perm4::IDENTITY);
        assert_eq!(ORDERED_S4[23], Perm4([3, 2, 1, 0]));
        for (i, p) in ORDERED_S4.iter().enumerate() {
            assert_eq!(p.ordered_index(), i);
        }
    }

    #[test]
    fn inverse_and_sign() {
        for p in ORDERED_S4 {
            assert_eq!(p.compose(p.inverse()), Perm4::IDENTITY);
            assert_eq!(p.inverse().compose(p), Perm4::IDENTITY);
            for q in ORDERED_S4 {
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
            }
        }
        assert_eq!(Perm4([1, 0, 2, 3]).sign(), -1);
        assert_eq!(Perm4([1, 2, 0, 3]).sign(), 1);
        assert!(Perm4::new([0, 0, 1, 2]).is_none());
    }
}
