//! Serializable reports. Unbounded integers are decimal strings in JSON,
//! lengths are floats.

use std::io::{self, Write};

use num_bigint::BigUint;
use serde::Serialize;

use markov_phi::markov::Collision;
use markov_phi::necklace::{Necklace, NecklaceParams};
use markov_phi::spectrum::{CrossCheckReport, InjectivityReport, PhiCollision, SimpleSpectrum, SpectrumEntry};

use crate::args::Format;

pub trait Report: Serialize {
    fn csv_header(&self) -> Vec<&'static str>;
    fn csv_rows(&self) -> Vec<Vec<String>>;
    fn text(&self) -> String;
}

pub fn write<R: Report>(report: &R, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(report.csv_header())?;
            for row in report.csv_rows() {
                w.write_record(&row)?;
            }
            w.flush()
        }
        Format::Text => write!(out, "{}", report.text()),
    }
}

fn strings(values: &[BigUint]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

/// Renders a positive length with 9 significant digits.
pub fn sig9(x: f64) -> String {
    let int_digits = if x >= 1.0 { x.log10().floor() as i32 + 1 } else { 1 };
    let decimals = (9 - int_digits).max(0) as usize;
    format!("{x:.decimals$}")
}

/// The common row shape shared by `phi` and `spectrum`.
#[derive(Debug, Serialize)]
pub struct NecklaceRow {
    pub necklace: String,
    pub k: usize,
    pub sum_n: String,
    pub phi: String,
    pub trace: String,
    pub length: f64,
    pub multiplicity: u32,
}

pub const ROW_HEADER: [&str; 7] = ["necklace", "k", "sum_n", "phi", "trace", "length", "multiplicity"];

impl NecklaceRow {
    pub fn from_entry(e: &SpectrumEntry) -> Self {
        NecklaceRow {
            necklace: e.source.to_string(),
            k: e.source.len(),
            sum_n: e.source.sum().to_string(),
            phi: e.phi.to_string(),
            trace: e.trace.to_string(),
            length: e.length,
            multiplicity: e.multiplicity,
        }
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.necklace.clone(),
            self.k.to_string(),
            self.sum_n.clone(),
            self.phi.clone(),
            self.trace.clone(),
            format!("{}", self.length),
            self.multiplicity.to_string(),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct PhiReport {
    #[serde(flatten)]
    pub row: NecklaceRow,
    /// Value from each evaluator that ran, in the order they ran.
    pub evaluators: Vec<EvaluatorValue>,
    pub agree: bool,
}

#[derive(Debug, Serialize)]
pub struct EvaluatorValue {
    pub evaluator: String,
    pub phi: String,
}

impl Report for PhiReport {
    fn csv_header(&self) -> Vec<&'static str> {
        ROW_HEADER.to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![self.row.cells()]
    }

    fn text(&self) -> String {
        let mut s = format!(
            "necklace {}\nphi      {}\ntrace    {}\nlength   {}\n",
            self.row.necklace,
            self.row.phi,
            self.row.trace,
            sig9(self.row.length)
        );
        for e in &self.evaluators {
            s += &format!("  {:<9}{}\n", e.evaluator, e.phi);
        }
        s += &format!("agree    {}\n", self.agree);
        s
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsJson {
    pub x: u64,
    pub y: u64,
    pub m: u64,
}

impl From<NecklaceParams> for ParamsJson {
    fn from(p: NecklaceParams) -> Self {
        ParamsJson { x: p.x, y: p.y, m: p.m }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub necklace: String,
    pub k: usize,
    pub primitive: bool,
    pub small_variation: bool,
    pub in_domain: bool,
    pub params: Option<ParamsJson>,
    /// Why the necklace is outside the domain, if it is.
    pub violation: Option<String>,
}

impl Report for CheckReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec![
            "necklace",
            "k",
            "primitive",
            "small_variation",
            "in_domain",
            "x",
            "y",
            "m",
            "violation",
        ]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let p = |f: fn(&ParamsJson) -> u64| self.params.as_ref().map(|p| f(p).to_string()).unwrap_or_default();
        vec![vec![
            self.necklace.clone(),
            self.k.to_string(),
            self.primitive.to_string(),
            self.small_variation.to_string(),
            self.in_domain.to_string(),
            p(|p| p.x),
            p(|p| p.y),
            p(|p| p.m),
            self.violation.clone().unwrap_or_default(),
        ]]
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{} (k={}): primitive={} small_variation={}\n",
            self.necklace, self.k, self.primitive, self.small_variation
        );
        match (&self.params, &self.violation) {
            (Some(p), _) => s += &format!("in domain, x={} y={} m={}\n", p.x, p.y, p.m),
            (None, Some(v)) => s += &format!("not in domain: {v}\n"),
            (None, None) => s += "not in domain\n",
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsReport {
    pub necklace: String,
    pub x: u64,
    pub y: u64,
    pub m: u64,
}

impl ParamsReport {
    pub fn new(necklace: &Necklace, p: NecklaceParams) -> Self {
        ParamsReport {
            necklace: necklace.to_string(),
            x: p.x,
            y: p.y,
            m: p.m,
        }
    }
}

impl Report for ParamsReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["necklace", "x", "y", "m"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.necklace.clone(),
            self.x.to_string(),
            self.y.to_string(),
            self.m.to_string(),
        ]]
    }

    fn text(&self) -> String {
        format!("{}\n", self.necklace)
    }
}

#[derive(Debug, Serialize)]
pub struct ThetaReport {
    pub input: String,
    pub inverse: bool,
    pub output: String,
}

impl Report for ThetaReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["input", "inverse", "output"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.input.clone(), self.inverse.to_string(), self.output.clone()]]
    }

    fn text(&self) -> String {
        format!("{}\n", self.output)
    }
}

#[derive(Debug, Serialize)]
pub struct NumbersReport {
    pub bound: String,
    pub numbers: Vec<String>,
}

impl NumbersReport {
    pub fn new(bound: &BigUint, numbers: &[BigUint]) -> Self {
        NumbersReport {
            bound: bound.to_string(),
            numbers: strings(numbers),
        }
    }
}

impl Report for NumbersReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["markov_number"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.numbers.iter().map(|n| vec![n.clone()]).collect()
    }

    fn text(&self) -> String {
        self.numbers.iter().map(|n| format!("{n}\n")).collect()
    }
}

#[derive(Debug, Serialize)]
pub struct TripleCollision {
    pub markov_number: String,
    pub triples: Vec<[String; 3]>,
}

#[derive(Debug, Serialize)]
pub struct UniquenessReport {
    pub bound: String,
    pub triples: usize,
    pub collisions: Vec<TripleCollision>,
}

impl UniquenessReport {
    pub fn new(bound: &BigUint, triples: usize, collisions: &[Collision]) -> Self {
        UniquenessReport {
            bound: bound.to_string(),
            triples,
            collisions: collisions
                .iter()
                .map(|c| TripleCollision {
                    markov_number: c.markov_number.to_string(),
                    triples: c
                        .triples
                        .iter()
                        .map(|t| [t.x().to_string(), t.y().to_string(), t.z().to_string()])
                        .collect(),
                })
                .collect(),
        }
    }
}

impl Report for UniquenessReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["markov_number", "x", "y", "z"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.collisions
            .iter()
            .flat_map(|c| {
                c.triples
                    .iter()
                    .map(|[x, y, z]| vec![c.markov_number.clone(), x.clone(), y.clone(), z.clone()])
            })
            .collect()
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{} triples up to {}, {} repeated Markov numbers\n",
            self.triples,
            self.bound,
            self.collisions.len()
        );
        for c in &self.collisions {
            let ts: Vec<String> = c.triples.iter().map(|[x, y, z]| format!("({x}, {y}, {z})")).collect();
            s += &format!("{}: {}\n", c.markov_number, ts.join(" "));
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct PhiCollisionJson {
    pub phi: String,
    pub necklaces: Vec<String>,
}

fn collisions_json(cs: &[PhiCollision]) -> Vec<PhiCollisionJson> {
    cs.iter()
        .map(|c| PhiCollisionJson {
            phi: c.phi.to_string(),
            necklaces: c.necklaces.iter().map(|n| n.to_string()).collect(),
        })
        .collect()
}

fn collisions_text(cs: &[PhiCollisionJson]) -> String {
    cs.iter()
        .map(|c| format!("COLLISION phi={} {}\n", c.phi, c.necklaces.join(" ")))
        .collect()
}

#[derive(Debug, Serialize)]
pub struct SpectrumReport {
    pub phi_bound: String,
    pub entries: Vec<NecklaceRow>,
    pub ties: Vec<PhiCollisionJson>,
}

impl SpectrumReport {
    pub fn new(phi_bound: &BigUint, s: &SimpleSpectrum) -> Self {
        SpectrumReport {
            phi_bound: phi_bound.to_string(),
            entries: s.entries.iter().map(NecklaceRow::from_entry).collect(),
            ties: collisions_json(&s.ties),
        }
    }
}

impl Report for SpectrumReport {
    fn csv_header(&self) -> Vec<&'static str> {
        ROW_HEADER.to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(NecklaceRow::cells).collect()
    }

    fn text(&self) -> String {
        let mut s = format!("{:>13}  {:>4}  {:>12}  necklace\n", "length", "mult", "phi");
        for e in &self.entries {
            s += &format!(
                "{:>13}  {:>4}  {:>12}  {}\n",
                sig9(e.length),
                e.multiplicity,
                e.phi,
                e.necklace
            );
        }
        s + &collisions_text(&self.ties)
    }
}

#[derive(Debug, Serialize)]
pub struct InjectivityJson {
    pub phi_bound: String,
    pub scanned: usize,
    pub injective: bool,
    pub collisions: Vec<PhiCollisionJson>,
}

impl From<&InjectivityReport> for InjectivityJson {
    fn from(r: &InjectivityReport) -> Self {
        InjectivityJson {
            phi_bound: r.phi_bound.to_string(),
            scanned: r.scanned,
            injective: r.collisions.is_empty(),
            collisions: collisions_json(&r.collisions),
        }
    }
}

impl Report for InjectivityJson {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["phi", "necklace"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.collisions
            .iter()
            .flat_map(|c| c.necklaces.iter().map(|n| vec![c.phi.clone(), n.clone()]))
            .collect()
    }

    fn text(&self) -> String {
        format!(
            "scanned {} necklaces with phi <= {}: {}\n",
            self.scanned,
            self.phi_bound,
            if self.injective {
                "no collisions"
            } else {
                "COLLISIONS FOUND"
            }
        ) + &collisions_text(&self.collisions)
    }
}

#[derive(Debug, Serialize)]
pub struct CrossCheckJson {
    pub phi_bound: String,
    pub agree: bool,
    pub phi_values: Vec<String>,
    pub markov_numbers: Vec<String>,
    pub only_phi: Vec<String>,
    pub only_markov: Vec<String>,
}

impl From<&CrossCheckReport> for CrossCheckJson {
    fn from(r: &CrossCheckReport) -> Self {
        CrossCheckJson {
            phi_bound: r.phi_bound.to_string(),
            agree: r.agrees(),
            phi_values: strings(&r.phi_values),
            markov_numbers: strings(&r.markov_numbers),
            only_phi: strings(&r.only_phi),
            only_markov: strings(&r.only_markov),
        }
    }
}

impl Report for CrossCheckJson {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["value", "in_phi_image", "is_markov_number"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut all: Vec<&String> = self.phi_values.iter().chain(&self.only_markov).collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all.into_iter()
            .map(|v| {
                vec![
                    v.clone(),
                    self.phi_values.contains(v).to_string(),
                    self.markov_numbers.contains(v).to_string(),
                ]
            })
            .collect()
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{} values up to {}: {}\n",
            self.phi_values.len(),
            self.phi_bound,
            if self.agree {
                "image of phi equals the Markov numbers"
            } else {
                "MISMATCH"
            }
        );
        if !self.only_phi.is_empty() {
            s += &format!("only phi:    {}\n", self.only_phi.join(","));
        }
        if !self.only_markov.is_empty() {
            s += &format!("only Markov: {}\n", self.only_markov.join(","));
        }
        s
    }
}
