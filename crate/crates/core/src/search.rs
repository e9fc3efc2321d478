//! Backtracking search over finite assignments subject to functional
//! constraints `value(dst) = table[value(src)]`.
//!
//! Every map enumeration in the crate (simplicial maps, natural families of
//! maps of Γ-spaces, maps of spectra) is phrased as such a problem: one
//! variable per source simplex, constraints from faces, degeneracies,
//! restrictions and naturality.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Constraint {
    dst: usize,
    table: usize,
}

/// A finite constraint problem with functional constraints.
#[derive(Clone, Debug, Default)]
pub struct FunctionalCsp {
    domains: Vec<usize>,
    allowed: Vec<Option<Vec<usize>>>,
    out: Vec<Vec<Constraint>>,
    tables: Vec<Vec<usize>>,
    priority: Vec<usize>,
}

impl FunctionalCsp {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable ranging over `0..domain` and returns its id.
    pub fn add_var(&mut self, domain: usize) -> usize {
        self.domains.push(domain);
        self.allowed.push(None);
        self.out.push(Vec::new());
        self.domains.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    /// Restricts a variable to an explicit list of values.
    pub fn restrict(&mut self, var: usize, values: Vec<usize>) {
        self.allowed[var] = Some(values);
    }

    /// Registers a value table and returns its id, for sharing between
    /// constraints.
    pub fn add_table(&mut self, table: Vec<usize>) -> usize {
        self.tables.push(table);
        self.tables.len() - 1
    }

    /// Requires `value(dst) = tables[table][value(src)]`.
    pub fn constrain(&mut self, src: usize, dst: usize, table: usize) {
        debug_assert_eq!(self.tables[table].len(), self.domains[src]);
        self.out[src].push(Constraint { dst, table });
    }

    /// Variables are branched on in this order; unlisted variables follow
    /// in id order.
    pub fn set_priority(&mut self, order: Vec<usize>) {
        self.priority = order;
    }

    fn branch_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.domains.len()];
        let mut order = Vec::with_capacity(self.domains.len());
        for v in self.priority.iter().copied().chain(0..self.domains.len()) {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
        order
    }

    fn permitted(&self, var: usize, value: usize) -> bool {
        value < self.domains[var] && self.allowed[var].as_ref().is_none_or(|a| a.contains(&value))
    }

    /// Assigns and propagates; returns false on conflict. Assigned
    /// variables are pushed onto `trail`.
    fn assign(&self, var: usize, value: usize, values: &mut [Option<usize>], trail: &mut Vec<usize>) -> bool {
        if !self.permitted(var, value) {
            return false;
        }
        values[var] = Some(value);
        trail.push(var);
        let mut stack = vec![var];
        while let Some(v) = stack.pop() {
            let val = values[v].expect("assigned");
            for c in &self.out[v] {
                let t = self.tables[c.table][val];
                match values[c.dst] {
                    Some(existing) if existing != t => return false,
                    Some(_) => {}
                    None => {
                        if !self.permitted(c.dst, t) {
                            return false;
                        }
                        values[c.dst] = Some(t);
                        trail.push(c.dst);
                        stack.push(c.dst);
                    }
                }
            }
        }
        true
    }

    /// Enumerates every complete assignment satisfying all constraints, in
    /// lexicographic order of the branching sequence. `budget` bounds the
    /// number of tried values.
    pub fn solve_all(&self, budget: u64) -> Result<Vec<Vec<usize>>> {
        let mut solutions = Vec::new();
        self.search(budget, |sol| {
            solutions.push(sol.to_vec());
            true
        })?;
        Ok(solutions)
    }

    /// Counts solutions without storing them.
    pub fn count(&self, budget: u64) -> Result<u64> {
        let mut n = 0u64;
        self.search(budget, |_| {
            n += 1;
            true
        })?;
        Ok(n)
    }

    /// Depth-first search calling `visit` on each solution; `visit` returns
    /// false to stop early.
    pub fn search<V: FnMut(&[usize]) -> bool>(&self, budget: u64, mut visit: V) -> Result<()> {
        let order = self.branch_order();
        let mut values: Vec<Option<usize>> = vec![None; self.domains.len()];
        let mut nodes = 0u64;
        // Frames hold (position in order, next value to try, trail length).
        let mut frames: Vec<(usize, usize, usize)> = Vec::new();
        let mut trail: Vec<usize> = Vec::new();
        let mut pos = 0usize;
        'outer: loop {
            while pos < order.len() && values[order[pos]].is_some() {
                pos += 1;
            }
            if pos == order.len() {
                let sol: Vec<usize> = values.iter().map(|v| v.expect("complete")).collect();
                if !visit(&sol) {
                    return Ok(());
                }
            } else {
                frames.push((pos, 0, trail.len()));
            }
            // advance the deepest frame with remaining values
            loop {
                let Some(frame) = frames.last_mut() else { break 'outer };
                let (fpos, next, mark) = *frame;
                for v in trail.drain(mark..) {
                    values[v] = None;
                }
                let var = order[fpos];
                if next >= self.domains[var] {
                    frames.pop();
                    continue;
                }
                frame.1 = next + 1;
                nodes += 1;
                if nodes > budget {
                    return Err(Error::Budget { budget });
                }
                if self.assign(var, next, &mut values, &mut trail) {
                    pos = fpos + 1;
                    continue 'outer;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_product() {
        let mut csp = FunctionalCsp::new();
        csp.add_var(3);
        csp.add_var(2);
        assert_eq!(csp.count(1000).unwrap(), 6);
    }

    #[test]
    fn functional_constraint_forces_values() {
        let mut csp = FunctionalCsp::new();
        let a = csp.add_var(3);
        let b = csp.add_var(3);
        let t = csp.add_table(vec![1, 2, 0]);
        csp.constrain(a, b, t);
        let sols = csp.solve_all(1000).unwrap();
        assert_eq!(sols, vec![vec![0, 1], vec![1, 2], vec![2, 0]]);
    }

    #[test]
    fn conflicting_constraints_have_no_solution() {
        let mut csp = FunctionalCsp::new();
        let a = csp.add_var(2);
        let b = csp.add_var(2);
        let t1 = csp.add_table(vec![0, 1]);
        let t2 = csp.add_table(vec![1, 0]);
        csp.constrain(a, b, t1);
        csp.constrain(a, b, t2);
        assert_eq!(csp.count(1000).unwrap(), 0);
    }

    #[test]
    fn restriction_and_budget() {
        let mut csp = FunctionalCsp::new();
        for _ in 0..4 {
            let v = csp.add_var(4);
            csp.restrict(v, vec![1, 3]);
        }
        assert_eq!(csp.count(10_000).unwrap(), 16);
        assert!(matches!(csp.count(5), Err(Error::Budget { .. })));
    }

    #[test]
    fn brute_force_agreement() {
        // x1 = f(x0), x2 = g(x1), x2 = h(x0) over domain 4
        let f = vec![1, 0, 3, 2];
        let g = vec![2, 2, 1, 0];
        let h = vec![2, 2, 0, 1];
        let mut csp = FunctionalCsp::new();
        let x: Vec<usize> = (0..3).map(|_| csp.add_var(4)).collect();
        let (tf, tg, th) = (csp.add_table(f.clone()), csp.add_table(g.clone()), csp.add_table(h.clone()));
        csp.constrain(x[0], x[1], tf);
        csp.constrain(x[1], x[2], tg);
        csp.constrain(x[0], x[2], th);
        let mut brute = 0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    if b == f[a] && c == g[b] && c == h[a] {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(csp.count(1000).unwrap(), brute);
    }
}
