use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{RootSystem, Series, Weight};
use crate::error::{Error, Result};
use crate::rational::{dot, invert, q, Q};

/// A connected piece of a Levi sub-diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub series: Series,
    pub rank: usize,
    /// Ambient node indices, listed in the component's own Bourbaki order.
    pub nodes: Vec<usize>,
}

impl Component {
    pub fn root_system(&self) -> RootSystem {
        RootSystem::new(self.series, self.rank).expect("components have valid ranks")
    }
}

#[derive(Debug, Clone)]
pub struct LeviSubsystem {
    selected: Vec<usize>,
    components: Vec<Component>,
    projector: Vec<Vec<Q>>,
}

impl LeviSubsystem {
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Orthogonal projection onto span{α_i : i selected}, in ambient coordinates.
    pub fn projector(&self) -> &[Vec<Q>] {
        &self.projector
    }
}

/// λ = projected + central, with `projected` split over the components.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub components: Vec<(Component, Weight)>,
    pub projected: Weight,
    pub central: Weight,
}

impl RootSystem {
    pub fn levi_subsystem(&self, selected: &[usize]) -> Result<LeviSubsystem> {
        let mut sel = selected.to_vec();
        sel.sort_unstable();
        sel.dedup();
        if let Some(&bad) = sel.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::Precondition(format!(
                "node {} outside 1..{}",
                bad + 1,
                self.rank()
            )));
        }
        let components = self.split_components(&sel);
        for c in &components {
            let sub = c.root_system();
            for (a, &i) in c.nodes.iter().enumerate() {
                for (b, &j) in c.nodes.iter().enumerate() {
                    assert_eq!(sub.cartan()[a][b], self.cartan()[i][j], "misidentified component");
                }
            }
        }
        let dim = self.ambient_dim();
        let mut projector = vec![vec![Q::zero(); dim]; dim];
        if !sel.is_empty() {
            let rows: Vec<Vec<Q>> = sel
                .iter()
                .map(|&i| self.simple_roots()[i].iter().map(|&x| q(x)).collect())
                .collect();
            let gram: Vec<Vec<Q>> = rows.iter().map(|a| rows.iter().map(|b| dot(a, b)).collect()).collect();
            let ginv = invert(&gram).expect("simple roots are independent");
            for (s, row) in projector.iter_mut().enumerate() {
                for (t, entry) in row.iter_mut().enumerate() {
                    let mut acc = Q::zero();
                    for a in 0..rows.len() {
                        if rows[a][s].is_zero() {
                            continue;
                        }
                        for b in 0..rows.len() {
                            acc += &rows[a][s] * &ginv[a][b] * &rows[b][t];
                        }
                    }
                    *entry = acc;
                }
            }
        }
        Ok(LeviSubsystem { selected: sel, components, projector })
    }

    fn split_components(&self, sel: &[usize]) -> Vec<Component> {
        let mut seen = vec![false; self.rank()];
        let mut out = Vec::new();
        for &start in sel {
            if seen[start] {
                continue;
            }
            let mut nodes = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < nodes.len() {
                let i = nodes[k];
                for &j in sel {
                    if !seen[j] && self.adjacent(i, j) {
                        seen[j] = true;
                        nodes.push(j);
                    }
                }
                k += 1;
            }
            nodes.sort_unstable();
            out.push(self.identify(nodes));
        }
        out
    }

    fn identify(&self, nodes: Vec<usize>) -> Component {
        let last = self.rank() - 1;
        let rank = nodes.len();
        let series = match self.series() {
            Series::B | Series::C if rank >= 2 && nodes.contains(&last) => self.series(),
            Series::D if nodes.contains(&last) && nodes.contains(&(last - 1)) => Series::D,
            _ => Series::A,
        };
        Component { series, rank, nodes }
    }

    /// Splits λ into its projection on span(Π̂), given per component, and the
    /// central part ν_{λ,Π̂}.
    pub fn project_weight(&self, ls: &LeviSubsystem, w: &Weight) -> Result<Projection> {
        self.check(w)?;
        let amb = self.to_ambient(w);
        let p: Vec<Q> = ls.projector.iter().map(|row| dot(row, &amb)).collect();
        let nu: Vec<Q> = amb.iter().zip(&p).map(|(a, b)| a - b).collect();
        let components = ls
            .components
            .iter()
            .map(|c| {
                let sub = Weight::new(c.nodes.iter().map(|&i| w.fund()[i].clone()).collect());
                (c.clone(), sub)
            })
            .collect();
        Ok(Projection {
            components,
            projected: self.from_ambient(&p)?,
            central: self.from_ambient(&nu)?,
        })
    }

    /// Every connected sub-diagram, plus the empty set, ordered by size then
    /// lexicographically.
    pub fn connected_subdiagrams(&self) -> Vec<Vec<usize>> {
        let l = self.rank();
        let mut out: Vec<Vec<usize>> = (0u32..(1 << l))
            .map(|mask| (0..l).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| s.len() <= 1 || self.split_components(s).len() == 1)
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}
