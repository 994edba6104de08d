//! Builders for the worked families: determinantal varieties, point
//! configurations, Levi quotients, bipartite quivers, abelianizations and
//! generalized Kronecker quivers.
//!
//! Every family is addressable by a string `family:p1,p2,...`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, Stability};
use crate::strata::{local_quiver, LunaType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Determinantal,
    Points,
    LeviAdjoint,
    Bipartite,
    Abelianized,
    KroneckerGeneral,
    Kronecker,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Determinantal,
        Family::Points,
        Family::LeviAdjoint,
        Family::Bipartite,
        Family::Abelianized,
        Family::KroneckerGeneral,
        Family::Kronecker,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Determinantal => "determinantal",
            Family::Points => "points",
            Family::LeviAdjoint => "levi_adjoint",
            Family::Bipartite => "bipartite",
            Family::Abelianized => "abelianized",
            Family::KroneckerGeneral => "kronecker_general",
            Family::Kronecker => "kronecker",
        }
    }

    pub fn params(self) -> &'static str {
        match self {
            Family::Determinantal => "m,r",
            Family::Points => "m,d",
            Family::LeviAdjoint => "l[,dim_1,...,dim_l]",
            Family::Bipartite => "k,l,v_1,...,v_k,w_1,...,w_l",
            Family::Abelianized => "m,n,a,b",
            Family::KroneckerGeneral => "m,n",
            Family::Kronecker => "m",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Family::Determinantal => {
                "m arrows each way, d=(1,r), Theta=0, Theta'=(r,-1); m x m matrices of rank <= r (1 <= r <= m)"
            }
            Family::Points => {
                "star quiver with m sources, d=(1,...,1,d); ordered configurations of m points in P^(d-1) (d >= 2)"
            }
            Family::LeviAdjoint => {
                "complete quiver with loops on l vertices, Theta=0; Theta'=(l-1,-1,...,-1) when all dims are 1"
            }
            Family::Bipartite => {
                "complete bipartite quiver i_p -> j_q, Theta(i_p)=dim W, Theta(j_q)=-dim V"
            }
            Family::Abelianized => {
                "abelianization of kronecker_general(m,n) at d=(a,b), Theta=(b,-a); all-ones dimension vector"
            }
            Family::KroneckerGeneral => "m arrows i->j, n arrows j->i, d=(1,1), Theta=0, Theta'=(1,-1)",
            Family::Kronecker => "m arrows i->j, d=(1,1), Theta=(1,-1)",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown family '{s}'")))
    }
}

/// A built example: quiver, dimension vector, stability and, where the
/// family prescribes one, a deformed stability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Example {
    pub family: Family,
    pub params: Vec<i64>,
    pub quiver: Quiver,
    pub dimension: DimVector,
    pub stability: Stability,
    pub deformed_stability: Option<Stability>,
}

/// Parses `family:p1,p2,...` and builds the example.
pub fn parse_example(spec: &str) -> Result<Example> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let family: Family = name.trim().parse()?;
    let params = rest
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidParams(format!("bad parameter '{s}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    build_example(family, &params)
}

fn arity(family: Family, params: &[i64], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::InvalidParams(format!(
            "{family} expects parameters {}, got {} values",
            family.params(),
            params.len()
        )));
    }
    Ok(())
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg.into()))
    }
}

fn count(x: i64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::InvalidParams(format!("arrow count {x} out of range")))
}

fn named(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

fn two_vertex(m: u32, n: u32) -> Result<Quiver> {
    Quiver::new(vec!["i".into(), "j".into()], vec![vec![0, m], vec![n, 0]])
}

pub fn build_example(family: Family, params: &[i64]) -> Result<Example> {
    let (quiver, dimension, stability, deformed) = match family {
        Family::Determinantal => {
            arity(family, params, 2)?;
            let (m, r) = (params[0], params[1]);
            require(m >= 1 && 1 <= r && r <= m, "determinantal needs 1 <= r <= m")?;
            let q = two_vertex(count(m)?, count(m)?)?;
            (q, DimVector::new(vec![1, r])?, Stability::zero(2), Some(Stability::new(vec![r, -1])))
        }
        Family::Points => {
            arity(family, params, 2)?;
            let (m, d) = (params[0], params[1]);
            require(m >= 1 && d >= 2, "points needs m >= 1 and d >= 2")?;
            let n = m as usize;
            let mut arrows = vec![vec![0u32; n + 1]; n + 1];
            for row in arrows.iter_mut().take(n) {
                row[n] = 1;
            }
            let mut names = named("i", n);
            names.push("j".into());
            let q = Quiver::new(names, arrows)?;
            let mut dim = vec![1; n];
            dim.push(d);
            let mut theta = vec![d; n];
            theta.push(-m);
            let mut prime = vec![d * d; n];
            prime[0] += d;
            prime.push(-(m * d + 1));
            (
                q,
                DimVector::new(dim)?,
                Stability::new(theta),
                Some(Stability::new(prime)),
            )
        }
        Family::LeviAdjoint => {
            require(!params.is_empty(), "levi_adjoint needs l")?;
            let l = params[0];
            require(l >= 1, "levi_adjoint needs l >= 1")?;
            let n = l as usize;
            let dims = if params.len() == 1 {
                vec![1; n]
            } else {
                arity(family, params, n + 1)?;
                params[1..].to_vec()
            };
            require(dims.iter().all(|&x| x >= 1), "levi_adjoint dimensions must be positive")?;
            let q = Quiver::new(named("i", n), vec![vec![1; n]; n])?;
            let deformed = dims.iter().all(|&x| x == 1).then(|| {
                let mut w = vec![-1; n];
                w[0] = l - 1;
                Stability::new(w)
            });
            (q, DimVector::new(dims)?, Stability::zero(n), deformed)
        }
        Family::Bipartite => {
            require(params.len() >= 2, "bipartite needs k and l")?;
            let (k, l) = (params[0], params[1]);
            require(k >= 1 && l >= 1, "bipartite needs k, l >= 1")?;
            arity(family, params, 2 + (k + l) as usize)?;
            let (k, l) = (k as usize, l as usize);
            let v = &params[2..2 + k];
            let w = &params[2 + k..];
            require(v.iter().chain(w).all(|&x| x >= 1), "bipartite dimensions must be positive")?;
            let mut arrows = vec![vec![0u32; k + l]; k + l];
            for row in arrows.iter_mut().take(k) {
                for slot in row.iter_mut().skip(k) {
                    *slot = 1;
                }
            }
            let mut names = named("i", k);
            names.extend(named("j", l));
            let q = Quiver::new(names, arrows)?;
            let dim_v: i64 = v.iter().sum();
            let dim_w: i64 = w.iter().sum();
            let mut theta = vec![dim_w; k];
            theta.extend(std::iter::repeat(-dim_v).take(l));
            let dim: Vec<i64> = v.iter().chain(w).copied().collect();
            (q, DimVector::new(dim)?, Stability::new(theta), None)
        }
        Family::Abelianized => {
            arity(family, params, 4)?;
            let (m, n, a, b) = (params[0], params[1], params[2], params[3]);
            require(a >= 0 && b >= 0 && a + b > 0, "abelianized needs a, b >= 0, not both zero")?;
            let base = two_vertex(count(m)?, count(n)?)?;
            let (q, d, t) = abelianized_quiver(&base, &DimVector::new(vec![a, b])?, &Stability::new(vec![b, -a]))?;
            (q, d, t, None)
        }
        Family::KroneckerGeneral => {
            arity(family, params, 2)?;
            let q = two_vertex(count(params[0])?, count(params[1])?)?;
            (q, DimVector::ones(2), Stability::zero(2), Some(Stability::new(vec![1, -1])))
        }
        Family::Kronecker => {
            arity(family, params, 1)?;
            let q = two_vertex(count(params[0])?, 0)?;
            (q, DimVector::ones(2), Stability::new(vec![1, -1]), None)
        }
    };
    Ok(Example {
        family,
        params: params.to_vec(),
        quiver,
        dimension,
        stability,
        deformed_stability: deformed,
    })
}

/// The quiver `Q_d` with a vertex `i_k` for every basis vector and arrows
/// `i_k -> j_l` replicating each arrow `i -> j`, together with the pulled
/// back stability and the all-ones dimension vector.
pub fn abelianized_quiver(q: &Quiver, d: &DimVector, theta: &Stability) -> Result<(Quiver, DimVector, Stability)> {
    let n = q.vertex_count();
    for len in [d.len(), theta.len()] {
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, found: len });
        }
    }
    if d.is_zero() {
        return Err(Error::ZeroDimensionVector);
    }
    let mut origin = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        for k in 1..=d.coords()[i] {
            origin.push(i);
            names.push(format!("{}_{k}", q.vertices()[i]));
        }
    }
    let arrows = origin
        .iter()
        .map(|&i| origin.iter().map(|&j| q.arrow_count(i, j)).collect())
        .collect();
    let weights = origin.iter().map(|&i| theta.weights()[i]).collect();
    Ok((
        Quiver::new(names, arrows)?,
        DimVector::ones(origin.len()),
        Stability::new(weights),
    ))
}

/// Partition of `g` with one marked part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedPartition {
    pub parts: Vec<i64>,
    pub marked: usize,
}

impl MarkedPartition {
    pub fn new(parts: Vec<i64>, marked: usize) -> Result<Self> {
        require(!parts.is_empty(), "a marked partition needs a part")?;
        require(parts.iter().all(|&p| p >= 1), "partition parts must be positive")?;
        require(marked < parts.len(), "marked index out of range")?;
        Ok(MarkedPartition { parts, marked })
    }

    pub fn total(&self) -> i64 {
        self.parts.iter().sum()
    }
}

/// Comparison of the first-principles local data with the closed forms
/// `e(n-e) l_p l_q` (off-diagonal arrows), `1 - n l - e(e-n) l^2` (loops)
/// and `d - e l` / `-e l` (stability).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub off_diagonal: bool,
    pub loops: bool,
    pub stability: bool,
    /// Whether the off-diagonal counts also equal `e(e-n) l_p l_q`.
    pub stated_off_diagonal_sign: bool,
}

impl ClosedFormCheck {
    pub fn passes(&self) -> bool {
        self.off_diagonal && self.loops && self.stability
    }
}

/// Local quiver data for a point-configuration stratum, in partition order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointConfigLocal {
    pub luna_type: LunaType,
    pub quiver: Quiver,
    pub dimension: DimVector,
    pub stability: Stability,
    pub closed_form: ClosedFormCheck,
}

/// Builds the type attached to `lambda` on the `points(m, d)` quiver (the
/// marked block contains the first source) and computes its local quiver
/// with the family's deformed stability.
pub fn point_config_local_data(m: i64, d: i64, lambda: &MarkedPartition) -> Result<PointConfigLocal> {
    let ex = build_example(Family::Points, &[m, d])?;
    let g = m.gcd(&d);
    let (e, n) = (d / g, m / g);
    if lambda.total() != g {
        return Err(Error::InvalidParams(format!(
            "parts of {:?} do not sum to gcd(m, d) = {g}",
            lambda.parts
        )));
    }
    let s = lambda.parts.len();
    let mut order: Vec<usize> = vec![lambda.marked];
    order.extend((0..s).filter(|&p| p != lambda.marked));

    let vertices = m as usize + 1;
    let mut parts = vec![DimVector::zero(vertices); s];
    let mut next = 0usize;
    for &p in &order {
        let block = (n * lambda.parts[p]) as usize;
        let mut c = vec![0; vertices];
        for slot in c.iter_mut().skip(next).take(block) {
            *slot = 1;
        }
        c[vertices - 1] = e * lambda.parts[p];
        next += block;
        parts[p] = DimVector::new(c)?;
    }

    let xi = LunaType::new(parts.iter().map(|p| (p.clone(), 1)))?;
    let theta_prime = ex.deformed_stability.expect("points family has a deformation");
    let (canon_q, _, canon_s) = local_quiver(&ex.quiver, &xi, &theta_prime)?;
    let pos: Vec<usize> = parts
        .iter()
        .map(|p| xi.parts().iter().position(|x| x.part == *p).expect("part present"))
        .collect();
    let arrows: Vec<Vec<u32>> = (0..s)
        .map(|a| (0..s).map(|b| canon_q.arrow_count(pos[a], pos[b])).collect())
        .collect();
    let stab: Vec<i64> = (0..s).map(|a| canon_s.weights()[pos[a]]).collect();
    let quiver = Quiver::new((0..s).map(|p| format!("v{}", p + 1)).collect(), arrows)?;

    let l = &lambda.parts;
    let mut check = ClosedFormCheck {
        off_diagonal: true,
        loops: true,
        stability: true,
        stated_off_diagonal_sign: true,
    };
    for p in 0..s {
        for q in 0..s {
            let got = quiver.arrow_count(p, q) as i64;
            if p == q {
                check.loops &= got == 1 - n * l[p] - e * (e - n) * l[p] * l[p];
            } else {
                check.off_diagonal &= got == e * (n - e) * l[p] * l[q];
                check.stated_off_diagonal_sign &= got == e * (e - n) * l[p] * l[q];
            }
        }
        let expect = if p == lambda.marked { d - e * l[p] } else { -e * l[p] };
        check.stability &= stab[p] == expect;
    }

    Ok(PointConfigLocal {
        luna_type: xi,
        quiver,
        dimension: DimVector::ones(s),
        stability: Stability::new(stab),
        closed_form: check,
    })
}

/// Closed-form smallness data for `kronecker_general(m, n)` at the cone
/// vertex: the fibre is `P^(m-1)` and the stratum has codimension `m+n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankOneReport {
    pub m: i64,
    pub n: i64,
    pub fiber_dim: i64,
    pub codim: i64,
    pub small: bool,
}

impl RankOneReport {
    pub fn note(&self) -> String {
        if self.small {
            format!(
                "small (m<=n): fibre P^{} of dimension {} < {}/2",
                self.m - 1,
                self.fiber_dim,
                self.codim
            )
        } else {
            format!(
                "not small (m>n): fibre P^{} of dimension {} >= {}/2",
                self.m - 1,
                self.fiber_dim,
                self.codim
            )
        }
    }
}

pub fn rank_one_smallness_report(m: i64, n: i64) -> Result<RankOneReport> {
    require(m >= 1 && n >= 1, "rank-one report needs m, n >= 1")?;
    let fiber_dim = m - 1;
    let codim = m + n - 1;
    Ok(RankOneReport {
        m,
        n,
        fiber_dim,
        codim,
        small: 2 * fiber_dim < codim,
    })
}
