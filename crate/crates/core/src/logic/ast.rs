//! The unified formula language.
//!
//! One AST covers all the logic fragments used in this crate: boolean
//! operators, the near modalities `N+`/`N-` (closure), conditional
//! reachability `rho+`/`rho-`, plain reachability `sigma+`/`sigma-`, zone
//! reachability `zeta+`/`zeta-`, and the derived spatial operators `S`
//! (surrounded) and `P` (propagation). `+` is the forward direction
//! (following edges), `-` the backward one.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    /// Finite conjunction; the list is never empty.
    And(Vec<Formula>),
    /// Finite disjunction; the list is never empty.
    Or(Vec<Formula>),
    /// `N+ f`: points in the forward closure of `[[f]]`.
    NearFwd(Box<Formula>),
    /// `N- f`: points in the backward closure of `[[f]]`.
    NearBwd(Box<Formula>),
    /// `rho+(f1, f2)`: points with a forward path reaching `f1` whose
    /// strictly intermediate points satisfy `f2`.
    RhoFwd(Box<Formula>, Box<Formula>),
    RhoBwd(Box<Formula>, Box<Formula>),
    /// `sigma+ f`: points that reach `f1` forward, unconditionally.
    SigmaFwd(Box<Formula>),
    SigmaBwd(Box<Formula>),
    /// `zeta+(f1, f2)`: like `rho+` but every point strictly before the
    /// endpoint, including the start, must satisfy `f2`.
    ZetaFwd(Box<Formula>, Box<Formula>),
    ZetaBwd(Box<Formula>, Box<Formula>),
    /// `S(f1, f2)`: points satisfying `f1` that cannot leave `[[f1]]`
    /// without first crossing `[[f2]]`.
    Surround(Box<Formula>, Box<Formula>),
    /// `P(f1, f2)`: points satisfying `f2` reachable from `[[f1]]` through
    /// `[[f2]]`.
    Propagate(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(fs: Vec<Formula>) -> Formula {
        assert!(!fs.is_empty(), "conjunction list must be non-empty");
        Formula::And(fs)
    }

    pub fn or(fs: Vec<Formula>) -> Formula {
        assert!(!fs.is_empty(), "disjunction list must be non-empty");
        Formula::Or(fs)
    }

    pub fn near_fwd(f: Formula) -> Formula {
        Formula::NearFwd(Box::new(f))
    }

    pub fn near_bwd(f: Formula) -> Formula {
        Formula::NearBwd(Box::new(f))
    }

    pub fn rho_fwd(f1: Formula, f2: Formula) -> Formula {
        Formula::RhoFwd(Box::new(f1), Box::new(f2))
    }

    pub fn rho_bwd(f1: Formula, f2: Formula) -> Formula {
        Formula::RhoBwd(Box::new(f1), Box::new(f2))
    }

    pub fn sigma_fwd(f: Formula) -> Formula {
        Formula::SigmaFwd(Box::new(f))
    }

    pub fn sigma_bwd(f: Formula) -> Formula {
        Formula::SigmaBwd(Box::new(f))
    }

    pub fn zeta_fwd(f1: Formula, f2: Formula) -> Formula {
        Formula::ZetaFwd(Box::new(f1), Box::new(f2))
    }

    pub fn zeta_bwd(f1: Formula, f2: Formula) -> Formula {
        Formula::ZetaBwd(Box::new(f1), Box::new(f2))
    }

    pub fn surround(f1: Formula, f2: Formula) -> Formula {
        Formula::Surround(Box::new(f1), Box::new(f2))
    }

    pub fn propagate(f1: Formula, f2: Formula) -> Formula {
        Formula::Propagate(Box::new(f1), Box::new(f2))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        use Formula::*;
        match self {
            True | False | Atom(_) => 1,
            Not(f) | NearFwd(f) | NearBwd(f) | SigmaFwd(f) | SigmaBwd(f) => 1 + f.size(),
            And(fs) | Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            RhoFwd(a, b) | RhoBwd(a, b) | ZetaFwd(a, b) | ZetaBwd(a, b) | Surround(a, b)
            | Propagate(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// All atom names occurring in the formula.
    pub fn atoms(&self) -> Vec<&str> {
        fn go<'f>(f: &'f Formula, out: &mut Vec<&'f str>) {
            use Formula::*;
            match f {
                True | False => {}
                Atom(name) => out.push(name),
                Not(f) | NearFwd(f) | NearBwd(f) | SigmaFwd(f) | SigmaBwd(f) => go(f, out),
                And(fs) | Or(fs) => fs.iter().for_each(|f| go(f, out)),
                RhoFwd(a, b) | RhoBwd(a, b) | ZetaFwd(a, b) | ZetaBwd(a, b) | Surround(a, b)
                | Propagate(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(_) => 1,
            Formula::And(_) => 2,
            _ => 3,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            write!(f, "(")?;
        }
        use Formula::*;
        match self {
            True => write!(f, "true")?,
            False => write!(f, "false")?,
            Atom(name) => write!(f, "{name}")?,
            Not(inner) => {
                write!(f, "!")?;
                inner.fmt_prec(f, 3)?;
            }
            And(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    g.fmt_prec(f, 3)?;
                }
            }
            Or(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    g.fmt_prec(f, 2)?;
                }
            }
            NearFwd(g) => {
                write!(f, "N+ ")?;
                g.fmt_prec(f, 3)?;
            }
            NearBwd(g) => {
                write!(f, "N- ")?;
                g.fmt_prec(f, 3)?;
            }
            SigmaFwd(g) => {
                write!(f, "sigma+ ")?;
                g.fmt_prec(f, 3)?;
            }
            SigmaBwd(g) => {
                write!(f, "sigma- ")?;
                g.fmt_prec(f, 3)?;
            }
            RhoFwd(a, b) => write!(f, "rho+({a}, {b})")?,
            RhoBwd(a, b) => write!(f, "rho-({a}, {b})")?,
            ZetaFwd(a, b) => write!(f, "zeta+({a}, {b})")?,
            ZetaBwd(a, b) => write!(f, "zeta-({a}, {b})")?,
            Surround(a, b) => write!(f, "S({a}, {b})")?,
            Propagate(a, b) => write!(f, "P({a}, {b})")?,
        }
        if paren {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
