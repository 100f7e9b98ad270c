use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Identifier of a series. `F1`, `F2`, `F5` and `F9` are the three-variable
/// cases of `FA`, `FB`, `FC` and `FD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionId {
    FA,
    FB,
    FC,
    FD,
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
    F13,
    F14,
    HA,
    HB,
    HC,
}

impl FunctionId {
    pub const ALL: [FunctionId; 21] = [
        FunctionId::FA,
        FunctionId::FB,
        FunctionId::FC,
        FunctionId::FD,
        FunctionId::F1,
        FunctionId::F2,
        FunctionId::F3,
        FunctionId::F4,
        FunctionId::F5,
        FunctionId::F6,
        FunctionId::F7,
        FunctionId::F8,
        FunctionId::F9,
        FunctionId::F10,
        FunctionId::F11,
        FunctionId::F12,
        FunctionId::F13,
        FunctionId::F14,
        FunctionId::HA,
        FunctionId::HB,
        FunctionId::HC,
    ];

    /// The 17 distinct series (aliases removed).
    pub const DISTINCT: [FunctionId; 17] = [
        FunctionId::FA,
        FunctionId::FB,
        FunctionId::FC,
        FunctionId::FD,
        FunctionId::F3,
        FunctionId::F4,
        FunctionId::F6,
        FunctionId::F7,
        FunctionId::F8,
        FunctionId::F10,
        FunctionId::F11,
        FunctionId::F12,
        FunctionId::F13,
        FunctionId::F14,
        FunctionId::HA,
        FunctionId::HB,
        FunctionId::HC,
    ];

    pub fn name(self) -> &'static str {
        use FunctionId::*;
        match self {
            FA => "FA",
            FB => "FB",
            FC => "FC",
            FD => "FD",
            F1 => "F1",
            F2 => "F2",
            F3 => "F3",
            F4 => "F4",
            F5 => "F5",
            F6 => "F6",
            F7 => "F7",
            F8 => "F8",
            F9 => "F9",
            F10 => "F10",
            F11 => "F11",
            F12 => "F12",
            F13 => "F13",
            F14 => "F14",
            HA => "HA",
            HB => "HB",
            HC => "HC",
        }
    }

    /// Resolves the alias ids to the general n-variable function.
    pub fn canonical(self) -> FunctionId {
        match self {
            FunctionId::F1 => FunctionId::FA,
            FunctionId::F2 => FunctionId::FB,
            FunctionId::F5 => FunctionId::FC,
            FunctionId::F9 => FunctionId::FD,
            id => id,
        }
    }

    /// True for FA–FD, whose variable count is free.
    pub fn is_general(self) -> bool {
        matches!(
            self,
            FunctionId::FA | FunctionId::FB | FunctionId::FC | FunctionId::FD
        )
    }

    /// Variable count fixed by the id, if any.
    pub fn fixed_variables(self) -> Option<usize> {
        if self.is_general() {
            None
        } else {
            Some(3)
        }
    }

    /// Factor layout of the general term, in the printed order.
    pub fn layout(self, n: usize) -> Vec<Factor> {
        use Role::*;
        const M: usize = 0;
        const N: usize = 1;
        const P: usize = 2;
        let num = |role, comps: &[usize]| Factor::numerator(role, comps);
        let inv = |role, comps: &[usize]| Factor::inverse(role, comps);
        let all: Vec<usize> = (0..n).collect();
        let each = |ctor: fn(Role, &[usize]) -> Factor, mk: fn(u8) -> Role| -> Vec<Factor> {
            (0..n).map(|i| ctor(mk(i as u8 + 1), &[i])).collect()
        };
        match self.canonical() {
            FunctionId::FA => {
                let mut f = vec![num(A, &all)];
                f.extend(each(Factor::numerator, Bi));
                f.extend(each(Factor::inverse, Ci));
                f
            }
            FunctionId::FB => {
                let mut f = each(Factor::numerator, Ai);
                f.extend(each(Factor::numerator, Bi));
                f.push(inv(C, &all));
                f
            }
            FunctionId::FC => {
                let mut f = vec![num(A, &all), num(B, &all)];
                f.extend(each(Factor::inverse, Ci));
                f
            }
            FunctionId::FD => {
                let mut f = vec![num(A, &all)];
                f.extend(each(Factor::numerator, Bi));
                f.push(inv(C, &all));
                f
            }
            FunctionId::F3 => vec![
                num(Ai(1), &[M]),
                num(Ai(2), &[N, P]),
                num(Bi(1), &[M, P]),
                num(Bi(2), &[N]),
                inv(Ci(1), &[M]),
                inv(Ci(2), &[N]),
                inv(Ci(3), &[P]),
            ],
            FunctionId::F4 => vec![
                num(Ai(1), &[M, N, P]),
                num(Bi(1), &[M]),
                num(Bi(2), &[N, P]),
                inv(Ci(1), &[M]),
                inv(Ci(2), &[N]),
                inv(Ci(3), &[P]),
            ],
            FunctionId::F6 => vec![
                num(Ai(1), &[M]),
                num(Ai(2), &[N]),
                num(Ai(3), &[P]),
                num(Bi(1), &[M, P]),
                num(Bi(2), &[N]),
                inv(Ci(1), &[M]),
                inv(Ci(2), &[N, P]),
            ],
            FunctionId::F7 => vec![
                num(Ai(1), &[M]),
                num(Ai(2), &[N, P]),
                num(Bi(1), &[M]),
                num(Bi(2), &[N]),
                num(Bi(3), &[P]),
                inv(Ci(1), &[M, N, P]),
            ],
            FunctionId::F8 => vec![
                num(Ai(1), &[M, N, P]),
                num(Bi(1), &[M]),
                num(Bi(2), &[N]),
                num(Bi(3), &[P]),
                inv(Ci(1), &[M]),
                inv(Ci(2), &[N, P]),
            ],
            FunctionId::F10 => vec![
                num(Ai(1), &[M, P]),
                num(Ai(2), &[N]),
                num(Bi(1), &[M, P]),
                num(Bi(2), &[N]),
                inv(Ci(1), &[M]),
                inv(Ci(2), &[N, P]),
            ],
            FunctionId::F11 => vec![
                num(Ai(1), &[M]),
                num(Ai(2), &[N, P]),
                num(Bi(1), &[M, P]),
                num(Bi(2), &[N]),
                inv(Ci(1), &[M]),
                inv(Ci(2), &[N, P]),
            ],
            FunctionId::F12 => vec![
                num(Ai(1), &[M, P]),
                num(Ai(2), &[N]),
                num(Bi(1), &[M, N]),
                num(Bi(2), &[P]),
                inv(Ci(1), &[M]),
                inv(Ci(2), &[N, P]),
            ],
            FunctionId::F13 => vec![
                num(Ai(1), &[M]),
                num(Ai(2), &[N, P]),
                num(Bi(1), &[M, P]),
                num(Bi(2), &[N]),
                inv(Ci(1), &[M, N, P]),
            ],
            FunctionId::F14 => vec![
                num(Ai(1), &[M, N, P]),
                num(Bi(1), &[M, P]),
                num(Bi(2), &[N]),
                inv(Ci(1), &[M]),
                inv(Ci(2), &[N, P]),
            ],
            FunctionId::HA => vec![
                num(A, &[M, P]),
                num(B, &[M, N]),
                num(BPrime, &[N, P]),
                inv(C, &[M]),
                inv(CPrime, &[N, P]),
            ],
            FunctionId::HB => vec![
                num(A, &[M, P]),
                num(B, &[M, N]),
                num(BPrime, &[N, P]),
                inv(C, &[M]),
                inv(CPrime, &[N]),
                inv(CDoublePrime, &[P]),
            ],
            FunctionId::HC => vec![
                num(A, &[M, P]),
                num(B, &[M, N]),
                num(BPrime, &[N, P]),
                inv(C, &[M, N, P]),
            ],
            FunctionId::F1 | FunctionId::F2 | FunctionId::F5 | FunctionId::F9 => {
                unreachable!("canonical")
            }
        }
    }

    /// Parameter roles the series needs, in layout order.
    pub fn roles(self, n: usize) -> Vec<Role> {
        let mut roles = Vec::new();
        for f in self.layout(n) {
            if !roles.contains(&f.role) {
                roles.push(f.role);
            }
        }
        roles
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        FunctionId::ALL
            .iter()
            .copied()
            .find(|id| id.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::UnknownFunction {
                given: t.to_string(),
                valid: FunctionId::ALL
                    .iter()
                    .map(|id| id.name())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }
}

/// A named parameter slot. Indexed roles are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    A,
    B,
    C,
    BPrime,
    CPrime,
    CDoublePrime,
    Ai(u8),
    Bi(u8),
    Ci(u8),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::A => f.write_str("A"),
            Role::B => f.write_str("B"),
            Role::C => f.write_str("C"),
            Role::BPrime => f.write_str("B'"),
            Role::CPrime => f.write_str("C'"),
            Role::CDoublePrime => f.write_str("C''"),
            Role::Ai(i) => write!(f, "A{i}"),
            Role::Bi(i) => write!(f, "B{i}"),
            Role::Ci(i) => write!(f, "C{i}"),
        }
    }
}

impl FromStr for Role {
    type Err = Error;

    /// Accepts `A`, `A1`, `A_1`, `B'`, `B′`, `Bp`, `C''`, `C″`, `Cpp`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.trim().chars().filter(|c| *c != '_').collect();
        let t = t.replace('′', "'").replace('″', "''");
        let bad = || Error::UnknownRole(s.to_string());
        let mut chars = t.chars();
        let head = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest: String = chars.collect();
        let primes = match rest.as_str() {
            "" => Some(0),
            "'" | "p" | "P" => Some(1),
            "''" | "pp" | "PP" => Some(2),
            _ => None,
        };
        match (head, primes) {
            ('A', Some(0)) => return Ok(Role::A),
            ('B', Some(0)) => return Ok(Role::B),
            ('C', Some(0)) => return Ok(Role::C),
            ('B', Some(1)) => return Ok(Role::BPrime),
            ('C', Some(1)) => return Ok(Role::CPrime),
            ('C', Some(2)) => return Ok(Role::CDoublePrime),
            _ => {}
        }
        let i: u8 = rest.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        match head {
            'A' => Ok(Role::Ai(i)),
            'B' => Ok(Role::Bi(i)),
            'C' => Ok(Role::Ci(i)),
            _ => Err(bad()),
        }
    }
}

/// One Pochhammer factor `(M)_{k}` or `(M)_{k}⁻¹` of a general term, where
/// `k` sums the listed index components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub role: Role,
    pub inverse: bool,
    pub components: Vec<usize>,
}

impl Factor {
    fn numerator(role: Role, components: &[usize]) -> Self {
        Self {
            role,
            inverse: false,
            components: components.to_vec(),
        }
    }

    fn inverse(role: Role, components: &[usize]) -> Self {
        Self {
            role,
            inverse: true,
            components: components.to_vec(),
        }
    }

    pub fn degree(&self, idx: &[usize]) -> usize {
        self.components.iter().map(|&c| idx[c]).sum()
    }
}

/// Which series, with which parameters, in how many variables.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    id: FunctionId,
    n: usize,
    order: usize,
    params: BTreeMap<Role, ComplexMatrix>,
}

impl FunctionSpec {
    /// `n` must match the id's fixed variable count when it has one; unused
    /// roles are rejected so that typos do not pass silently.
    pub fn new(id: FunctionId, n: usize, params: BTreeMap<Role, ComplexMatrix>) -> Result<Self> {
        if let Some(fixed) = id.fixed_variables() {
            if n != fixed {
                return Err(Error::InvalidArgument(format!(
                    "{id} takes {fixed} variables, got {n}"
                )));
            }
        }
        if n == 0 {
            return Err(Error::InvalidArgument(
                "at least one variable is required".into(),
            ));
        }
        if n > u8::MAX as usize {
            return Err(Error::InvalidArgument(format!("too many variables: {n}")));
        }
        let roles = id.roles(n);
        for role in &roles {
            if !params.contains_key(role) {
                return Err(Error::MissingRole {
                    function: id.name().to_string(),
                    role: role.to_string(),
                });
            }
        }
        if let Some(extra) = params.keys().find(|r| !roles.contains(r)) {
            return Err(Error::InvalidArgument(format!(
                "{id} has no parameter {extra}; expected {}",
                roles
                    .iter()
                    .map(Role::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        let mut order = None;
        for (role, m) in &params {
            match order {
                None => order = Some(m.order()),
                Some(r) if r != m.order() => {
                    return Err(Error::InvalidArgument(format!(
                        "parameter {role} has order {} but the others have order {r}",
                        m.order()
                    )))
                }
                _ => {}
            }
        }
        Ok(Self {
            id,
            n,
            order: order.expect("at least one role"),
            params,
        })
    }

    /// Builds a spec from `(role, matrix)` pairs.
    pub fn from_pairs(
        id: FunctionId,
        n: usize,
        pairs: impl IntoIterator<Item = (Role, ComplexMatrix)>,
    ) -> Result<Self> {
        Self::new(id, n, pairs.into_iter().collect())
    }

    pub fn id(&self) -> FunctionId {
        self.id
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix order r shared by every parameter.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn params(&self) -> &BTreeMap<Role, ComplexMatrix> {
        &self.params
    }

    pub fn param(&self, role: Role) -> Result<&ComplexMatrix> {
        self.params.get(&role).ok_or_else(|| Error::MissingRole {
            function: self.id.name().to_string(),
            role: role.to_string(),
        })
    }

    pub fn layout(&self) -> Vec<Factor> {
        self.id.layout(self.n)
    }

    /// Copy with the alias id replaced by its general form.
    pub fn canonical(&self) -> FunctionSpec {
        FunctionSpec {
            id: self.id.canonical(),
            ..self.clone()
        }
    }

    /// Same spec with one parameter replaced.
    pub fn with_param(&self, role: Role, m: ComplexMatrix) -> Result<FunctionSpec> {
        let mut params = self.params.clone();
        params.insert(role, m);
        FunctionSpec::new(self.id, self.n, params)
    }

    /// The r = 1 spec holding the `k`-th diagonal entry of every parameter.
    pub fn diagonal_entry(&self, k: usize) -> FunctionSpec {
        let params = self
            .params
            .iter()
            .map(|(role, m)| (*role, ComplexMatrix::scalar(1, m.get(k, k))))
            .collect();
        FunctionSpec {
            id: self.id,
            n: self.n,
            order: 1,
            params,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn role_parsing() {
        assert_eq!("A".parse::<Role>().unwrap(), Role::A);
        assert_eq!("A_2".parse::<Role>().unwrap(), Role::Ai(2));
        assert_eq!("c3".parse::<Role>().unwrap(), Role::Ci(3));
        assert_eq!("B'".parse::<Role>().unwrap(), Role::BPrime);
        assert_eq!("B′".parse::<Role>().unwrap(), Role::BPrime);
        assert_eq!("Cpp".parse::<Role>().unwrap(), Role::CDoublePrime);
        assert_eq!("C″".parse::<Role>().unwrap(), Role::CDoublePrime);
        assert!("D1".parse::<Role>().is_err());
        assert!("A0".parse::<Role>().is_err());
        for role in [Role::A, Role::BPrime, Role::CDoublePrime, Role::Bi(4)] {
            assert_eq!(role.to_string().parse::<Role>().unwrap(), role);
        }
    }

    #[test]
    fn unknown_id_lists_valid_ids() {
        let err = "F15".parse::<FunctionId>().unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("F15") && msg.contains("HC") && msg.contains("FA"),
            "{msg}"
        );
        assert_eq!("hb".parse::<FunctionId>().unwrap(), FunctionId::HB);
    }

    #[test]
    fn aliases_share_layouts() {
        for (alias, general) in [
            (FunctionId::F1, FunctionId::FA),
            (FunctionId::F2, FunctionId::FB),
            (FunctionId::F5, FunctionId::FC),
            (FunctionId::F9, FunctionId::FD),
        ] {
            assert_eq!(alias.layout(3), general.layout(3));
            assert_eq!(alias.fixed_variables(), Some(3));
        }
    }

    #[test]
    fn spec_validation() {
        let i = ComplexMatrix::identity(2);
        let ok = FunctionSpec::from_pairs(
            FunctionId::FD,
            1,
            [
                (Role::A, i.clone()),
                (Role::Bi(1), i.clone()),
                (Role::C, i.clone()),
            ],
        );
        assert!(ok.is_ok());
        let missing = FunctionSpec::from_pairs(
            FunctionId::FD,
            1,
            [(Role::A, i.clone()), (Role::C, i.clone())],
        );
        assert!(matches!(missing, Err(Error::MissingRole { .. })));
        let mixed = FunctionSpec::from_pairs(
            FunctionId::FD,
            1,
            [
                (Role::A, i.clone()),
                (Role::Bi(1), ComplexMatrix::identity(3)),
                (Role::C, i.clone()),
            ],
        );
        assert!(mixed.is_err());
        let wrong_n = FunctionSpec::from_pairs(FunctionId::F1, 2, []);
        assert!(wrong_n.is_err());
    }

    #[test]
    fn every_role_appears_once_per_layout() {
        for id in FunctionId::ALL {
            let n = id.fixed_variables().unwrap_or(2);
            let layout = id.layout(n);
            let mut seen = Vec::new();
            for f in &layout {
                assert!(!seen.contains(&f.role), "{id} repeats {}", f.role);
                seen.push(f.role);
                assert!(f.components.iter().all(|&c| c < n));
            }
        }
    }
}
