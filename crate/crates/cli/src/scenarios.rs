//! Named worked examples with checked expectations.

use ringcodes_core::{
    adiag1_matrix_a, adiag1_matrix_b, adiag3_matrix, diag1_matrix, prime_square_codes, resolve_u,
    Budget, CertifiedMatrix, ConditionId, Error, GramShape, LinearCode, Matrix, MpcSpec, Property,
    Result, Ring,
};
use serde::Serialize;
use serde_json::json;

use crate::{certificate_text, Output, EXIT_FAIL, EXIT_PASS};

pub const IDS: &[&str] = &[
    "ex1",
    "ex2",
    "z25-selfdual",
    "prime-square:<p>",
    "lemma-diag1:<ring>:<u>",
    "lemma-adiag1:<ring>",
    "lemma-adiag3:<ring>",
];

#[derive(Debug, Clone, Serialize)]
pub struct Expectation {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Scenario {
    pub id: String,
    pub description: String,
    pub expectations: Vec<Expectation>,
}

impl Scenario {
    fn new(id: &str, description: impl Into<String>) -> Self {
        Scenario {
            id: id.to_string(),
            description: description.into(),
            expectations: Vec::new(),
        }
    }

    fn expect(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        self.expectations.push(Expectation {
            name: name.into(),
            pass,
            witness: witness.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.expectations.iter().all(|e| e.pass)
    }
}

pub fn run_scenario(id: &str, budget: Budget) -> Result<Scenario> {
    if let Some(p) = id.strip_prefix("prime-square:") {
        let p = p
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad prime `{p}`")))?;
        return prime_square(id, p, budget);
    }
    if let Some(rest) = id.strip_prefix("lemma-diag1:") {
        let (ring, u) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::InvalidParameter("expected lemma-diag1:<ring>:<u>".into()))?;
        let ring = Ring::parse(ring)?;
        let u = ring.parse_element(u)?;
        let cert = diag1_matrix(&ring, &u, budget)?;
        let lambda = ring.int(2).add(&u.mul(&u)?)?;
        return Ok(certificate(
            id,
            &ring,
            &cert,
            GramShape::Diagonal(vec![lambda, ring.int(2)]),
            &[3, 2],
        ));
    }
    if let Some(ring) = id.strip_prefix("lemma-adiag1:") {
        let ring = Ring::parse(ring)?;
        let u = resolve_u(&ring, None)?;
        let a = adiag1_matrix_a(&ring, &u, budget)?;
        let b = adiag1_matrix_b(&ring, &u, budget)?;
        let minus_one = ring.one().neg();
        let three_u = ring.int(3).mul(&u)?;
        let mut sa = certificate(
            id,
            &ring,
            &a,
            GramShape::AntiDiagonal(vec![minus_one.clone(), minus_one]),
            &[2, 2],
        );
        let sb = certificate(
            id,
            &ring,
            &b,
            GramShape::AntiDiagonal(vec![three_u.clone(), three_u]),
            &[4, 3],
        );
        for mut e in sb.expectations {
            e.name = format!("B: {}", e.name);
            sa.expectations.push(e);
        }
        sa.description = format!("matrices A and B over {ring} with u = {u}");
        return Ok(sa);
    }
    if let Some(ring) = id.strip_prefix("lemma-adiag3:") {
        let ring = Ring::parse(ring)?;
        let u = resolve_u(&ring, None)?;
        let cert = adiag3_matrix(&ring, &u, budget)?;
        let two_u = ring.int(2).mul(&u)?;
        return Ok(certificate(
            id,
            &ring,
            &cert,
            GramShape::AntiDiagonal(vec![two_u.clone(), two_u]),
            &[2, 1],
        ));
    }
    match id {
        "ex1" => ex1(budget),
        "ex2" => ex2(budget),
        "z25-selfdual" => z25(budget),
        _ => Err(Error::InvalidParameter(format!(
            "unknown scenario `{id}`; known: {}",
            IDS.join(", ")
        ))),
    }
}

pub fn reproduce(id: &str, budget: Budget) -> Result<Output> {
    let s = run_scenario(id, budget)?;
    let mut text = vec![format!("{}: {}", s.id, s.description)];
    for e in &s.expectations {
        text.push(format!(
            "{} {}: {}",
            if e.pass { "PASS" } else { "FAIL" },
            e.name,
            e.witness
        ));
    }
    let code = if s.passed() { EXIT_PASS } else { EXIT_FAIL };
    let mut json = serde_json::to_value(&s).expect("scenario serializes");
    json["verdict"] = json!(if code == EXIT_PASS { "pass" } else { "fail" });
    Ok(Output {
        text: text.join("\n"),
        json,
        code,
    })
}

fn code(ring: &Ring, len: usize, gens: &[&[i64]], budget: Budget) -> Result<LinearCode> {
    LinearCode::from_ints(ring, len, gens, budget)
}

fn words_equal(c: &LinearCode, expected: &[&[i64]]) -> bool {
    let ring = c.ring();
    let mut exp: Vec<Vec<u32>> = expected
        .iter()
        .map(|w| w.iter().map(|&k| ring.from_int(k)).collect())
        .collect();
    exp.sort();
    exp.dedup();
    let got: Vec<Vec<u32>> = c.word_values().map(<[u32]>::to_vec).collect();
    got == exp
}

fn justified(
    spec: &MpcSpec,
    property: Property,
    by: ConditionId,
    budget: Budget,
) -> (bool, String) {
    let report = spec.check_conditions(budget);
    let ids = report.justifications(property);
    let names: Vec<&str> = ids.iter().map(|c| c.as_str()).collect();
    (
        ids.contains(&by),
        format!("gram {}, justified by {names:?}", report.gram),
    )
}

fn ex1(budget: Budget) -> Result<Scenario> {
    let mut s = Scenario::new("ex1", "Z/20, C_1 = {0,10}, C_2 = 4Z/20, A = [[1,2],[0,0]]");
    let r = Ring::integers_mod(20)?;
    let spec = MpcSpec::new(
        vec![
            code(&r, 1, &[&[10]], budget)?,
            code(&r, 1, &[&[4]], budget)?,
        ],
        Matrix::from_ints(&r, &[&[1, 2], &[0, 0]])?,
    )?;
    let built = spec.build(budget)?;
    let expected: Vec<Vec<i64>> = vec![vec![0, 0], vec![10, 0]];
    let exp_refs: Vec<&[i64]> = expected.iter().map(Vec::as_slice).collect();
    s.expect(
        "MPC = 10Z/20 x {0}",
        words_equal(&built, &exp_refs),
        built.summary(),
    );
    let dual = built.dual_bruteforce(budget)?;
    let dual_ok = dual.cardinality() == 200 && dual.word_values().all(|w| w[0] % 2 == 0);
    s.expect(
        "dual = 2Z/20 x Z/20",
        dual_ok,
        format!("{} codewords, {}", dual.cardinality(), dual.summary()),
    );
    s.expect(
        "self-orthogonal",
        built.is_self_orthogonal(),
        "checked on generators",
    );
    let (ok, w) = justified(
        &spec,
        Property::SelfOrthogonal,
        ConditionId::SelfOrth1,
        budget,
    );
    s.expect("SelfOrthogonal via thm-self-orth-1", ok, w);
    Ok(s)
}

fn ex2(budget: Budget) -> Result<Scenario> {
    let mut s = Scenario::new(
        "ex2",
        "Z/20, C_1 = {0,10}, C_2 = 4Z/20, B = [[0,2,0,4],[0,4,2,0]], both orderings",
    );
    let r = Ring::integers_mod(20)?;
    let c1 = code(&r, 1, &[&[10]], budget)?;
    let c2 = code(&r, 1, &[&[4]], budget)?;
    let b = Matrix::from_ints(&r, &[&[0, 2, 0, 4], &[0, 4, 2, 0]])?;
    let cases: [(&str, Vec<LinearCode>, &[&[i64]]); 2] = [
        (
            "[C_1 C_2]B",
            vec![c1.clone(), c2.clone()],
            &[
                &[0, 0, 0, 0],
                &[0, 16, 8, 0],
                &[0, 12, 16, 0],
                &[0, 8, 4, 0],
                &[0, 4, 12, 0],
            ],
        ),
        (
            "[C_2 C_1]B",
            vec![c2, c1],
            &[
                &[0, 0, 0, 0],
                &[0, 8, 0, 16],
                &[0, 16, 0, 12],
                &[0, 4, 0, 8],
                &[0, 12, 0, 4],
            ],
        ),
    ];
    for (name, codes, expected) in cases {
        let spec = MpcSpec::new(codes, b.clone())?;
        let built = spec.build(budget)?;
        s.expect(
            format!("{name} codeword list"),
            words_equal(&built, expected),
            built.summary(),
        );
        s.expect(
            format!("{name} self-orthogonal"),
            built.is_self_orthogonal(),
            "checked on generators",
        );
        let (ok, w) = justified(
            &spec,
            Property::SelfOrthogonal,
            ConditionId::SelfOrth2,
            budget,
        );
        s.expect(format!("{name} SelfOrthogonal via thm-self-orth-2"), ok, w);
    }
    Ok(s)
}

fn z25(budget: Budget) -> Result<Scenario> {
    let mut s = Scenario::new("z25-selfdual", "Z/25, C = span{(1,7)}, A = [[1,7],[7,1]]");
    let r = Ring::integers_mod(25)?;
    let c = code(&r, 2, &[&[1, 7]], budget)?;
    s.expect("C self-dual", c.is_self_dual(budget)?, c.summary());
    let cert = adiag3_matrix(&r, &r.int(7), budget)?;
    let gram_ok =
        cert.gram == GramShape::AntiDiagonal(vec![r.int(14), r.int(14)]) && r.int(14).is_unit();
    s.expect(
        "AA^t = adiag(14,14), 14 a unit",
        gram_ok,
        cert.gram.to_string(),
    );
    let spec = MpcSpec::new(vec![c.clone(), c], cert.matrix.clone())?;
    let (ok, w) = justified(&spec, Property::SelfDual, ConditionId::SelfDual, budget);
    s.expect("SelfDual via thm-self-dual", ok, w);
    let built = spec.build(budget)?;
    s.expect(
        "MPC self-dual (brute-force dual)",
        built.is_self_dual(budget)?,
        format!("{} codewords", built.cardinality()),
    );
    let d = built.min_distance()?;
    s.expect("minimum distance 2", d == 2, format!("d = {d}"));
    let g = Matrix::from_ints(&r, &[&[1, 7]])?;
    let rank = spec.free_rank(&[g.clone(), g], budget)?;
    s.expect(
        "rate 1/2",
        rank == 2 && built.length() == 4,
        format!("free rank {rank}, length {}", built.length()),
    );
    Ok(s)
}

fn prime_square(id: &str, p: u64, budget: Budget) -> Result<Scenario> {
    let (r, c1, c2) = prime_square_codes(p, budget)?;
    let mut s = Scenario::new(
        id,
        format!(
            "Z/{}, C_1 = span{{(1,...,1)}}, C_2 = span{{({p},...,{p})}} of length {p}",
            p * p
        ),
    );
    let (d1, d2) = (c1.min_distance()?, c2.min_distance()?);
    s.expect(
        "d_1 = d_2 = p",
        d1 == p as usize && d2 == p as usize,
        format!("d_1 = {d1}, d_2 = {d2}"),
    );
    s.expect(
        "C_1 ⊆ C_2^⊥ and C_2 ⊆ C_1^⊥",
        c1.is_orthogonal_to(&c2)? && c2.is_orthogonal_to(&c1)?,
        "checked on generators",
    );
    let u = resolve_u(&r, None)?;
    let p = p as usize;
    for (name, cert, factor, min_d) in [
        ("A", adiag1_matrix_a(&r, &u, budget)?, 3, 2 * p),
        ("B", adiag1_matrix_b(&r, &u, budget)?, 5, 3 * p),
    ] {
        let spec = MpcSpec::new(vec![c1.clone(), c2.clone()], cert.matrix.clone())?;
        let built = spec.build(budget)?;
        let (ok, w) = justified(
            &spec,
            Property::SelfOrthogonal,
            ConditionId::SelfOrth2,
            budget,
        );
        s.expect(format!("{name}: SelfOrthogonal via thm-self-orth-2"), ok, w);
        s.expect(
            format!("{name}: self-orthogonal"),
            built.is_self_orthogonal(),
            "checked on generators",
        );
        s.expect(
            format!("{name}: length {factor}p"),
            built.length() == factor * p,
            format!("length {}", built.length()),
        );
        let d = built.min_distance()?;
        s.expect(
            format!("{name}: d >= {min_d}"),
            d >= min_d,
            format!("d = {d}"),
        );
    }
    Ok(s)
}

fn certificate(
    id: &str,
    ring: &Ring,
    cert: &CertifiedMatrix,
    gram: GramShape,
    deltas: &[usize],
) -> Scenario {
    let mut s = Scenario::new(id, format!("{} over {ring}", cert.matrix));
    s.expect(
        format!("gram = {gram}"),
        cert.gram == gram || same_matrix(cert, &gram),
        cert.gram.to_string(),
    );
    s.expect(
        format!("deltas = {deltas:?}"),
        cert.deltas == deltas,
        format!("{:?}", cert.deltas),
    );
    s.expect(
        "hypotheses",
        true,
        certificate_text(cert).replace('\n', "; "),
    );
    s
}

/// A zero Gram matrix is both diagonal and anti-diagonal.
fn same_matrix(cert: &CertifiedMatrix, gram: &GramShape) -> bool {
    gram.lambdas().iter().all(|l| l.is_zero()) && cert.gram.lambdas().iter().all(|l| l.is_zero())
}
