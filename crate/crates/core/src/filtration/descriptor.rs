//! Names for the classes the engine can test.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::tilting::Class;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ClassDescriptor {
    /// Objects satisfying every listed condition; the empty list is everything.
    Meet { of: Vec<Class> },
    /// Cokernels of injections from `X(2)`-objects into `X(0)`-objects.
    K0,
    /// `X(1)`.
    K1,
    /// Kernels of surjections from `X(2)`-objects onto `X(0)`-objects.
    K2,
    /// Extension closures of `K0`, `K1`, `K2`.
    E0,
    E1,
    E2,
    /// Extension closure of the quotients of objects in the meet.
    Bracket { of: Vec<Class> },
    /// Objects with no nonzero morphism from the class.
    Perp { of: Box<ClassDescriptor> },
    /// Members of `torsion` that lie in `(free_of)°`.
    Between { torsion: Box<ClassDescriptor>, free_of: Box<ClassDescriptor> },
    /// The zero object only.
    Zero,
}

impl ClassDescriptor {
    pub fn meet(of: &[Class]) -> ClassDescriptor {
        ClassDescriptor::Meet { of: of.to_vec() }
    }

    pub fn single(c: Class) -> ClassDescriptor {
        ClassDescriptor::Meet { of: vec![c] }
    }

    pub fn bracket(of: &[Class]) -> ClassDescriptor {
        ClassDescriptor::Bracket { of: of.to_vec() }
    }

    pub fn perp(of: ClassDescriptor) -> ClassDescriptor {
        ClassDescriptor::Perp { of: Box::new(of) }
    }

    pub fn between(torsion: ClassDescriptor, free_of: ClassDescriptor) -> ClassDescriptor {
        ClassDescriptor::Between { torsion: Box::new(torsion), free_of: Box::new(free_of) }
    }

    /// `T_i = [B(i) ∩ ... ∩ B(n)]`; `T_{n+1}` is everything.
    pub fn t_class(i: usize, n: usize) -> ClassDescriptor {
        if i > n {
            return ClassDescriptor::meet(&[]);
        }
        if i == n {
            return ClassDescriptor::single(Class::B(n as i32));
        }
        ClassDescriptor::Bracket { of: (i..=n).map(|k| Class::B(k as i32)).collect() }
    }

    /// `T_i ∩ F_{i-1}`, the class of the `i`-th factor of the general filtration.
    pub fn general_factor(i: usize, n: usize) -> ClassDescriptor {
        if i == 1 {
            return ClassDescriptor::t_class(1, n);
        }
        ClassDescriptor::between(ClassDescriptor::t_class(i, n), ClassDescriptor::t_class(i - 1, n))
    }

    /// Whether the class is closed under quotients and extensions.
    pub fn is_torsion_class(&self, n: usize) -> bool {
        match self {
            ClassDescriptor::Meet { of } => {
                of.is_empty() || of.iter().all(|c| matches!(c, Class::B(i) if *i as usize == n) || *c == Class::C(0))
            }
            ClassDescriptor::E0 | ClassDescriptor::Bracket { .. } | ClassDescriptor::Zero => true,
            _ => false,
        }
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |of: &[Class]| of.iter().map(Class::to_string).collect::<Vec<_>>().join(" & ");
        match self {
            ClassDescriptor::Meet { of } if of.is_empty() => write!(f, "all"),
            ClassDescriptor::Meet { of } => write!(f, "{}", join(of)),
            ClassDescriptor::K0 => write!(f, "K0"),
            ClassDescriptor::K1 => write!(f, "K1"),
            ClassDescriptor::K2 => write!(f, "K2"),
            ClassDescriptor::E0 => write!(f, "E0"),
            ClassDescriptor::E1 => write!(f, "E1"),
            ClassDescriptor::E2 => write!(f, "E2"),
            ClassDescriptor::Bracket { of } => write!(f, "[{}]", join(of)),
            ClassDescriptor::Perp { of } => write!(f, "({of})°"),
            ClassDescriptor::Between { torsion, free_of } => write!(f, "{torsion} & ({free_of})°"),
            ClassDescriptor::Zero => write!(f, "0"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_classes() {
        assert_eq!(ClassDescriptor::t_class(2, 2), ClassDescriptor::single(Class::B(2)));
        assert_eq!(ClassDescriptor::t_class(1, 2).to_string(), "[B(1) & B(2)]");
        assert_eq!(ClassDescriptor::general_factor(3, 2).to_string(), "all & (B(2))°");
        assert!(ClassDescriptor::t_class(1, 2).is_torsion_class(2));
        assert!(!ClassDescriptor::single(Class::B(1)).is_torsion_class(2));
        let s = serde_json::to_string(&ClassDescriptor::perp(ClassDescriptor::K0)).unwrap();
        assert_eq!(serde_json::from_str::<ClassDescriptor>(&s).unwrap(), ClassDescriptor::perp(ClassDescriptor::K0));
    }
}
