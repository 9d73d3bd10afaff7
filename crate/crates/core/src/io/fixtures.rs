use crate::gendec::{twisted_product, TwistedProduct};
use crate::weights::Permutation;

use super::records::{BundleRecord, CartanRecord, GendecRecord, NormalizationTag};
use super::FormatError;

/// Built-in bundles: name and a one-line description.
pub const FIXTURES: &[(&str, &str)] = &[
    ("agl18", "principal 2-block of AGL(1,8), k(B) = 8"),
    ("a4xa4", "principal 2-block of A4 x A4, k(B) = 16"),
    ("s3-subsection", "principal 3-block of S3 at an element of order 3, k(B) = 3"),
    ("dade-cyclic", "5-block with cyclic defect group of order 25 and inertial index 4, k(B) = 10"),
    ("z4xa4-twist", "(Z4 x A4) extended by an involution inverting Z4 and twisting A4, p = 2"),
    ("s3xs3-swap", "(Z9 x S3 x S3) extended by an involution inverting Z9 and swapping the factors, p = 3"),
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

fn empty(label: &str, p: u64, q: u64, cartan: Vec<Vec<i64>>) -> BundleRecord {
    BundleRecord {
        label: label.into(),
        p,
        q,
        n_generators: Vec::new(),
        cartan: CartanRecord::new(NormalizationTag::B, cartan),
        defect: None,
        forms: Vec::new(),
        ordering: None,
        partition: None,
        known_kb: None,
        ibr_action: None,
        gendec: None,
    }
}

fn kron(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (m, n) = (a.len(), b.len());
    (0..m * n).map(|r| (0..m * n).map(|c| a[r / n][c / n] * b[r % n][c % n]).collect()).collect()
}

fn scaled(a: &[Vec<i64>], s: i64) -> Vec<Vec<i64>> {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

fn with_gendec(mut b: BundleRecord, f: TwistedProduct) -> BundleRecord {
    b.known_kb = Some(f.data.k() as u64);
    b.gendec = Some(GendecRecord::from_data(&f.data, &f.c_bar, Some(f.heights)));
    b
}

fn ones_plus_identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|r| (0..n).map(|c| 1 + (r == c) as i64).collect()).collect()
}

fn agl18() -> BundleRecord {
    let mut b = empty(
        "agl18",
        2,
        1,
        vec![
            vec![2, 0, 0, 1, 1],
            vec![0, 2, 0, 1, 1],
            vec![0, 0, 2, 1, 1],
            vec![1, 1, 1, 4, 3],
            vec![1, 1, 1, 3, 4],
        ],
    );
    let mut form: Vec<_> = (1..=5).map(|i| (i, i, 1)).collect();
    form.extend([(1, 2, 1), (1, 5, -1), (2, 5, -1), (3, 5, -1), (4, 5, -1)]);
    b.defect = Some(3);
    b.forms = vec![form];
    b.known_kb = Some(8);
    b
}

fn a4xa4() -> BundleRecord {
    let j = ones_plus_identity(3);
    let mut b = empty("a4xa4", 2, 1, kron(&j, &j));
    b.defect = Some(4);
    b.known_kb = Some(16);
    b
}

fn s3_subsection() -> Result<BundleRecord, FormatError> {
    let id = Permutation::identity(1);
    let f = twisted_product(3, 3, 2, &[vec![1]], &[1], &id, &id)?;
    let mut b = empty("s3-subsection", 3, 3, vec![vec![3]]);
    b.n_generators = vec![2];
    b.defect = Some(1);
    Ok(with_gendec(b, f))
}

fn dade_cyclic() -> BundleRecord {
    let mut b = empty("dade-cyclic", 5, 25, vec![vec![25]]);
    b.n_generators = vec![7];
    b.defect = Some(2);
    b.known_kb = Some(10);
    b
}

fn z4xa4_twist() -> Result<BundleRecord, FormatError> {
    let d = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]];
    let irr = Permutation::from_one_based(&[1, 3, 2, 4])?;
    let ibr = Permutation::from_one_based(&[1, 3, 2])?;
    let f = twisted_product(2, 4, 3, &d, &[1, 1, 1, 3], &irr, &ibr)?;
    let mut b = empty("z4xa4-twist", 2, 4, scaled(&ones_plus_identity(3), 4));
    b.n_generators = vec![3];
    b.ibr_action = Some(vec![vec![1, 3, 2]]);
    b.defect = Some(4);
    Ok(with_gendec(b, f))
}

fn s3xs3_swap() -> Result<BundleRecord, FormatError> {
    let ds3 = [[1, 0], [0, 1], [1, 1]];
    let deg = [1u64, 1, 2];
    let mut d = Vec::new();
    let mut degrees = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            d.push((0..4).map(|c| ds3[a][c / 2] * ds3[b][c % 2]).collect());
            degrees.push(deg[a] * deg[b]);
        }
    }
    let irr = Permutation::from_images((0..9).map(|x| (x % 3) * 3 + x / 3).collect())?;
    let ibr = Permutation::from_one_based(&[1, 3, 2, 4])?;
    let f = twisted_product(3, 9, -1, &d, &degrees, &irr, &ibr)?;
    let c_s3 = vec![vec![2, 1], vec![1, 2]];
    let mut b = empty("s3xs3-swap", 3, 9, scaled(&kron(&c_s3, &c_s3), 9));
    b.n_generators = vec![-1];
    b.ibr_action = Some(vec![vec![1, 3, 2, 4]]);
    b.defect = Some(4);
    Ok(with_gendec(b, f))
}

/// The bundle of the named fixture.
pub fn fixture(name: &str) -> Result<BundleRecord, FormatError> {
    match name {
        "agl18" => Ok(agl18()),
        "a4xa4" => Ok(a4xa4()),
        "s3-subsection" => s3_subsection(),
        "dade-cyclic" => Ok(dade_cyclic()),
        "z4xa4-twist" => z4xa4_twist(),
        "s3xs3-swap" => s3xs3_swap(),
        _ => Err(FormatError::UnknownFixture(name.into())),
    }
}
