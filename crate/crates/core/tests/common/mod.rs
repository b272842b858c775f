#![allow(dead_code)]

use diagroot::rank2::{Param, Params};
use diagroot::{figure1_rows, BraidingMatrix, Figure1Row, GroupValue, ValueGroup};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub row: u8,
    pub variant: usize,
    pub label: String,
    pub matrix: BraidingMatrix,
    pub params: Params,
    pub group: ValueGroup,
}

pub fn row_group(row: &Figure1Row) -> ValueGroup {
    ValueGroup::new(row.generic.len(), row.torsion()).unwrap()
}

pub fn zeta_choices(row: &Figure1Row, group: ValueGroup) -> Vec<Option<GroupValue>> {
    if row.zeta_orders.is_empty() {
        return vec![None];
    }
    row.zeta_orders
        .iter()
        .flat_map(|&n| group.primitive_roots(n))
        .map(Some)
        .collect()
}

pub fn params_for(row: &Figure1Row, group: ValueGroup, zeta: Option<GroupValue>) -> Params {
    let has = |p: Param| row.generic.iter().any(|g| g.param == p);
    Params {
        zeta,
        q: has(Param::Q).then(|| group.generic(0).unwrap()),
        r: has(Param::R).then(|| group.generic(1).unwrap()),
    }
}

/// Every variant of every row, at generic parameters and at every primitive
/// root of the orders the row asks for.
pub fn figure1_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for row in figure1_rows() {
        let group = row_group(row);
        for zeta in zeta_choices(row, group) {
            let params = params_for(row, group, zeta.clone());
            for v in 0..row.variants.len() {
                let matrix = row.instantiate(v, group, &params).unwrap();
                let label = match &zeta {
                    Some(z) => format!("row {} v{} ζ={}", row.id, v + 1, z),
                    None => format!("row {} v{}", row.id, v + 1),
                };
                out.push(Instance {
                    row: row.id,
                    variant: v + 1,
                    label,
                    matrix,
                    params: params.clone(),
                    group,
                });
            }
        }
    }
    out
}

pub fn twisted(m: &BraidingMatrix, t: &GroupValue) -> BraidingMatrix {
    BraidingMatrix::rank2(
        m.get(0, 0).clone(),
        m.get(0, 1).mul(t).unwrap(),
        m.get(1, 0).div(t).unwrap(),
        m.get(1, 1).clone(),
    )
    .unwrap()
}

fn random_value(rng: &mut ChaCha8Rng, g: ValueGroup) -> GroupValue {
    let free = (0..g.free_rank()).map(|_| rng.gen_range(-6..=6)).collect();
    let t: i64 = rng.gen_range(-6..=6);
    g.value(free, t.rem_euclid(g.torsion() as i64) as u64)
        .unwrap()
}

fn uniform_matrix(rng: &mut ChaCha8Rng) -> BraidingMatrix {
    let n = rng.gen_range(1..=24);
    let f = usize::from(rng.gen_bool(0.3));
    let g = ValueGroup::new(f, n).unwrap();
    let e: Vec<GroupValue> = (0..4).map(|_| random_value(rng, g)).collect();
    BraidingMatrix::new(2, e).unwrap()
}

/// A row of the table with torsion at most 24, parameters drawn at random
/// (generic parameters sometimes specialised to roots of unity), then a
/// random twist and possibly a transposition.
fn biased_matrix(rng: &mut ChaCha8Rng) -> BraidingMatrix {
    let rows: Vec<&Figure1Row> = figure1_rows()
        .iter()
        .filter(|r| r.torsion() <= 24)
        .collect();
    let row = rows[rng.gen_range(0..rows.len())];
    let mult = 24 / row.torsion();
    let torsion = row.torsion() * rng.gen_range(1..=mult.min(3));
    let group = ValueGroup::new(1, torsion).unwrap();
    let zetas = zeta_choices(row, group);
    let zeta = zetas[rng.gen_range(0..zetas.len())].clone();
    let mut generic = || {
        let a = if rng.gen_bool(0.35) {
            0
        } else {
            rng.gen_range(1..=3)
        };
        let t = rng.gen_range(0..torsion);
        group.value(vec![a], t).unwrap()
    };
    let params = Params {
        zeta,
        q: Some(generic()),
        r: Some(generic()),
    };
    let v = rng.gen_range(0..row.variants.len());
    let m = row.instantiate(v, group, &params).unwrap();
    let t = random_value(rng, group);
    let m = twisted(&m, &t);
    if rng.gen_bool(0.5) {
        m.permuted(&[1, 0]).unwrap()
    } else {
        m
    }
}

/// The fixed randomized rank-2 sample: alternately uniform and table-biased.
pub fn random_sample(seed: u64, count: usize) -> Vec<BraidingMatrix> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            if k % 2 == 0 {
                uniform_matrix(&mut rng)
            } else {
                biased_matrix(&mut rng)
            }
        })
        .collect()
}

pub const SEED: u64 = 0x5eed_2007;
pub const SAMPLE_SIZE: usize = 240;
