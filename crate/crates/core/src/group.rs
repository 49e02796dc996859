//! Finite groups presented by multiplication tables over element ids.
//!
//! Convention: element `0` is the identity. Tables are validated on
//! construction (identity row/column, Latin square, inverses,
//! associativity); the groups in scope are tiny, so the cubic
//! associativity check is nothing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    order: usize,
    /// `table[i][j]` is the product `i * j`.
    table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("empty multiplication table"));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::invalid("multiplication table is not square"));
            }
            if row.iter().any(|&v| v >= n) {
                return Err(Error::invalid("multiplication table entry out of range"));
            }
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::invalid("element 0 is not the identity"));
            }
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                seen_row[table[i][j]] = true;
                seen_col[table[j][i]] = true;
            }
            if seen_row.contains(&false) || seen_col.contains(&false) {
                return Err(Error::invalid("multiplication table is not a Latin square"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::invalid(format!(
                            "associativity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        let g = GroupTable { order: n, table };
        for i in 0..n {
            if (0..n).all(|j| g.table[i][j] != 0) {
                return Err(Error::invalid(format!("element {i} has no inverse")));
            }
        }
        Ok(g)
    }

    pub fn cyclic(n: usize) -> GroupTable {
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        GroupTable::new(table).expect("cyclic group table is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.order)
            .find(|&j| self.table[i][j] == 0)
            .expect("validated tables have inverses")
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut acc = i;
        let mut ord = 1;
        while acc != 0 {
            acc = self.mul(acc, i);
            ord += 1;
        }
        ord
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order)
            .map(|i| self.element_order(i) as u64)
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (0..self.order).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// Closure of a generating set, sorted.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if !seen[y] {
                        seen[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    /// A small generating set, chosen greedily over ascending ids.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closure = vec![0usize];
        for i in 1..self.order {
            if !closure.contains(&i) {
                gens.push(i);
                closure = self.subgroup_closure(&gens);
                if closure.len() == self.order {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_subgroup(&self, ids: &[usize]) -> bool {
        if !ids.contains(&0) {
            return false;
        }
        ids.iter()
            .all(|&a| ids.iter().all(|&b| ids.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, ids: &[usize]) -> bool {
        self.is_subgroup(ids)
            && (0..self.order).all(|g| ids.iter().all(|&x| ids.contains(&self.conjugate(g, x))))
    }

    /// Left cosets of a subgroup; the identity coset comes first, the rest
    /// are ordered by their minimal element id. Each coset is sorted.
    pub fn cosets(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut cosets = Vec::new();
        for g in 0..self.order {
            if assigned[g] {
                continue;
            }
            let mut coset: Vec<usize> = subgroup.iter().map(|&h| self.mul(g, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                assigned[x] = true;
            }
            cosets.push(coset);
        }
        cosets.sort_by_key(|c| if c.contains(&0) { 0 } else { c[0] + 1 });
        cosets
    }

    /// Quotient by a normal subgroup: returns the quotient table (coset
    /// label 0 = the identity coset) and the projection element -> label.
    pub fn quotient(&self, normal: &[usize]) -> Result<(GroupTable, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::invalid("subgroup is not normal"));
        }
        let cosets = self.cosets(normal);
        let mut label = vec![0usize; self.order];
        for (idx, coset) in cosets.iter().enumerate() {
            for &x in coset {
                label[x] = idx;
            }
        }
        let m = cosets.len();
        let mut table = vec![vec![0usize; m]; m];
        for (a, ca) in cosets.iter().enumerate() {
            for (b, cb) in cosets.iter().enumerate() {
                table[a][b] = label[self.mul(ca[0], cb[0])];
            }
        }
        Ok((GroupTable::new(table)?, label))
    }

    /// Conjugacy classes, each sorted, ordered by minimal element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if assigned[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                assigned[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Restrict the table to a subgroup, relabelling ids by position.
    /// Returns the sub-table and the id map (new id -> old id).
    pub fn subgroup_table(&self, ids: &[usize]) -> Result<(GroupTable, Vec<usize>)> {
        if !self.is_subgroup(ids) {
            return Err(Error::invalid("ids do not form a subgroup"));
        }
        let mut ids = ids.to_vec();
        ids.sort_unstable();
        let pos = |x: usize| ids.iter().position(|&y| y == x).unwrap();
        let table = ids
            .iter()
            .map(|&a| ids.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        Ok((GroupTable::new(table)?, ids))
    }
}
