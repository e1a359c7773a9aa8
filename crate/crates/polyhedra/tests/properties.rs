//! Randomised checks of the polyhedra kernel against brute-force oracles.
//!
//! The vertex oracle solves every square subsystem of the constraints by
//! Gaussian elimination and keeps the feasible solutions; it shares no code
//! with the double description conversion.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use polyhedra::rational::int;
use polyhedra::{
    union_covers, Constraint, Generators, IntegerBox, LinearExpr, Optimum, Polyhedron, Rational,
    Relation, Variable, VariableSpace,
};

const NAMES: [&str; 5] = ["x0", "x1", "x2", "x3", "x4"];

fn space(dim: usize) -> Arc<VariableSpace> {
    Arc::new(VariableSpace::parameters(&NAMES[..dim]))
}

/// `coeffs . x <= rhs`
type Row = (Vec<i64>, i64);

fn row_constraint(row: &Row) -> Constraint {
    let mut e = LinearExpr::zero();
    for (i, &k) in row.0.iter().enumerate() {
        e.add_term(int(k), NAMES[i]);
    }
    Constraint::le(e, int(row.1))
}

fn rows_strategy(dim: usize, max_rows: usize) -> impl Strategy<Value = Vec<Row>> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..=3, dim), -6i64..=6),
        1..=max_rows,
    )
}

fn box_rows(dim: usize, bound: i64) -> Vec<Row> {
    let mut out = Vec::new();
    for i in 0..dim {
        let mut up = vec![0; dim];
        up[i] = 1;
        let mut down = vec![0; dim];
        down[i] = -1;
        out.push((up, bound));
        out.push((down, bound));
    }
    out
}

fn build(dim: usize, rows: &[Row]) -> Polyhedron {
    let cs: Vec<_> = rows.iter().map(row_constraint).collect();
    Polyhedron::from_constraints(space(dim), &cs).unwrap()
}

fn satisfies(rows: &[Row], x: &[Rational]) -> bool {
    rows.iter().all(|(a, b)| {
        let lhs: Rational = a.iter().zip(x).map(|(&k, v)| int(k) * v).sum();
        lhs <= int(*b)
    })
}

/// Unique solution of a square system, if any.
#[allow(clippy::needless_range_loop)]
fn solve(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for c in col..n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
                let d = &f * &rhs[col];
                rhs[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn brute_vertices(dim: usize, rows: &[Row]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for s in subsets(rows.len(), dim) {
        let m = s
            .iter()
            .map(|&i| rows[i].0.iter().map(|&k| int(k)).collect())
            .collect();
        let rhs = s.iter().map(|&i| int(rows[i].1)).collect();
        if let Some(x) = solve(m, rhs) {
            if satisfies(rows, &x) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

fn objective(c: &[i64]) -> LinearExpr {
    let mut e = LinearExpr::zero();
    for (i, &k) in c.iter().enumerate() {
        e.add_term(int(k), NAMES[i]);
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constraints_generators_round_trip(
        rows in (1usize..=5).prop_flat_map(|d| rows_strategy(d, 6).prop_map(move |r| (d, r))),
    ) {
        let (dim, rows) = rows;
        let p = build(dim, &rows);
        if p.is_empty() {
            prop_assert!(p.generators().is_err());
        } else {
            let g = p.generators().unwrap();
            let q = Polyhedron::from_generators(space(dim), &g).unwrap();
            prop_assert!(q.equals(&p).unwrap());
            let again = Polyhedron::from_constraints(space(dim), &p.constraints()).unwrap();
            prop_assert!(again.equals(&p).unwrap());
            for v in &g.vertices {
                prop_assert!(satisfies(&rows, v));
            }
        }
    }

    #[test]
    fn minimize_matches_vertex_enumeration(
        rows in (1usize..=3).prop_flat_map(|d| rows_strategy(d, 5).prop_map(move |r| (d, r))),
        c in prop::collection::vec(-4i64..=4, 3),
    ) {
        let (dim, mut rows) = rows;
        rows.extend(box_rows(dim, 6));
        let p = build(dim, &rows);
        let verts = brute_vertices(dim, &rows);
        let obj = objective(&c[..dim]);
        if verts.is_empty() {
            prop_assert!(p.is_empty());
        } else {
            prop_assert!(!p.is_empty());
            let best = verts
                .iter()
                .map(|v| obj.evaluate(&NAMES.iter().zip(v).map(|(n, x)| (n.to_string(), x.clone())).collect()).unwrap())
                .min()
                .unwrap();
            prop_assert_eq!(p.minimize(&obj).unwrap(), Optimum::Finite(best.clone()));
            let arg = p.argmin(&obj).unwrap().unwrap();
            prop_assert!(p.contains_point(&arg).unwrap());
            let mut g = p.generators().unwrap().vertices;
            let mut expected = verts.clone();
            g.sort();
            expected.sort();
            prop_assert_eq!(g, expected);
        }
    }

    #[test]
    fn unbounded_objective_detected(
        rows in (1usize..=3).prop_flat_map(|d| rows_strategy(d, 4).prop_map(move |r| (d, r))),
        c in prop::collection::vec(-4i64..=4, 3),
    ) {
        let (dim, rows) = rows;
        let p = build(dim, &rows);
        prop_assume!(!p.is_empty());
        let obj = objective(&c[..dim]);
        let g = p.generators().unwrap();
        let dot = |v: &Vec<Rational>| -> Rational {
            v.iter().zip(&c).map(|(x, &k)| x * int(k)).sum()
        };
        let unbounded = g.rays.iter().any(|r| dot(r).is_negative())
            || g.lines.iter().any(|l| !dot(l).is_zero());
        prop_assert_eq!(p.minimize(&obj).unwrap() == Optimum::Unbounded, unbounded);
    }

    #[test]
    fn projection_matches_projected_vertices(
        rows in rows_strategy(3, 6),
        drop in 0usize..3,
    ) {
        let mut rows = rows;
        rows.extend(box_rows(3, 5));
        let p = build(3, &rows);
        let fm = p.project_out(&[NAMES[drop]]).unwrap();
        let by_gens = p.project_out_by_generators(&[NAMES[drop]]).unwrap();
        prop_assert!(fm.equals(&by_gens).unwrap());
        let verts = brute_vertices(3, &rows);
        let kept: Vec<Vec<Rational>> = verts
            .iter()
            .map(|v| v.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, x)| x.clone()).collect())
            .collect();
        let oracle = Polyhedron::from_generators(
            fm.space().clone(),
            &Generators { vertices: kept, rays: vec![], lines: vec![] },
        )
        .unwrap();
        prop_assert!(fm.equals(&oracle).unwrap());
    }

    #[test]
    fn integer_hull_properties(
        rows in rows_strategy(3, 5),
    ) {
        // x0 is a clock, x1 and x2 are parameters.
        let s = Arc::new(
            VariableSpace::new(vec![
                Variable::clock("x0"),
                Variable::parameter("x1"),
                Variable::parameter("x2"),
            ])
            .unwrap(),
        );
        let mut rows = rows;
        rows.extend(box_rows(3, 4));
        let cs: Vec<_> = rows.iter().map(row_constraint).collect();
        let p = Polyhedron::from_constraints(s.clone(), &cs).unwrap();
        let bx = IntegerBox::new().with("x1", -4, 4).with("x2", -4, 4);
        let ih = p.integer_hull(&bx).unwrap();
        prop_assert!(ih.is_subset_of(&p).unwrap());
        prop_assert!(ih.integer_hull(&bx).unwrap().equals(&ih).unwrap());
        for v1 in -4..=4i64 {
            for v2 in -4..=4i64 {
                let slice = p
                    .with_constraints(&[Constraint::eq("x1", int(v1)), Constraint::eq("x2", int(v2))])
                    .unwrap();
                prop_assert!(slice.is_subset_of(&ih).unwrap());
            }
        }
        if !ih.is_empty() {
            for v in ih.generators().unwrap().vertices {
                prop_assert!(v[1].is_integer() && v[2].is_integer());
            }
        }
    }

    #[test]
    fn union_cover_agrees_with_sampling(
        a in rows_strategy(2, 3),
        b in rows_strategy(2, 3),
        q in rows_strategy(2, 3),
    ) {
        let mut q = q;
        q.extend(box_rows(2, 4));
        let pa = build(2, &a);
        let pb = build(2, &b);
        let pq = build(2, &q);
        let covered = union_covers(&[pa.clone(), pb.clone()], &pq).unwrap();
        // Grid sampling at quarter steps can only refute coverage.
        let mut refuted = false;
        for i in -16..=16i64 {
            for j in -16..=16i64 {
                let x = vec![polyhedra::rational::ratio(i, 4), polyhedra::rational::ratio(j, 4)];
                if pq.contains_point(&x).unwrap()
                    && !pa.contains_point(&x).unwrap()
                    && !pb.contains_point(&x).unwrap()
                {
                    refuted = true;
                }
            }
        }
        if refuted {
            prop_assert!(!covered);
        }
        if pq.is_subset_of(&pa).unwrap() || pq.is_subset_of(&pb).unwrap() {
            prop_assert!(covered);
        }
    }

    #[test]
    fn parsed_display_round_trips(rows in rows_strategy(3, 5)) {
        let p = build(3, &rows);
        let text = p
            .constraints()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        if !p.is_empty() {
            let q = Polyhedron::parse(space(3), &text).unwrap();
            prop_assert!(q.equals(&p).unwrap());
        }
        for c in p.constraints() {
            prop_assert!(matches!(c.relation, Relation::LessEq | Relation::Eq));
        }
    }
}

#[test]
fn union_cover_needs_both_members() {
    let s = space(1);
    let left = Polyhedron::parse(s.clone(), "0 <= x0 <= 1").unwrap();
    let right = Polyhedron::parse(s.clone(), "1 <= x0 <= 2").unwrap();
    let whole = Polyhedron::parse(s.clone(), "0 <= x0 <= 2").unwrap();
    assert!(union_covers(&[left.clone(), right.clone()], &whole).unwrap());
    assert!(!union_covers(std::slice::from_ref(&left), &whole).unwrap());
    let gap = Polyhedron::parse(s.clone(), "3/2 <= x0 <= 2").unwrap();
    assert!(!union_covers(&[left, gap], &whole).unwrap());
}
