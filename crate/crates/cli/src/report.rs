//! Typed reports for every subcommand. The structured output is the JSON
//! serialization of these types; the text output is rendered from the same
//! values, so the two always agree.

use jetalg::{JetVariable, Presentation};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub base: String,
    pub order: u32,
    pub weight: u64,
}

impl GeneratorInfo {
    pub fn from_variable(v: &JetVariable) -> Self {
        GeneratorInfo {
            name: v.to_string(),
            base: v.base().to_string(),
            order: v.order(),
            weight: v.weight(),
        }
    }
}

pub fn generator_infos(p: &Presentation) -> Vec<GeneratorInfo> {
    p.generators().iter().map(GeneratorInfo::from_variable).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetReport {
    pub command: String,
    pub file: String,
    pub ring: String,
    pub jet_order: u32,
    pub relative_to_tower_base: bool,
    pub constants: Vec<String>,
    pub generators: Vec<GeneratorInfo>,
    pub relations: Vec<String>,
}

impl JetReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let relative = if self.relative_to_tower_base { " (relative to tower base)" } else { "" };
        let _ = writeln!(
            out,
            "jet presentation of order {} over {}{relative}",
            self.jet_order, self.ring
        );
        if !self.constants.is_empty() {
            let _ = writeln!(out, "constants: {}", self.constants.join(", "));
        }
        let _ = writeln!(out, "generators ({}):", self.generators.len());
        for g in &self.generators {
            let _ = writeln!(out, "  {}  weight {}", g.name, g.weight);
        }
        let _ = writeln!(out, "relations ({}):", self.relations.len());
        for r in &self.relations {
            let _ = writeln!(out, "  {r}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AssertionStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// An expected negative finding (e.g. non-surjectivity) reported with a
    /// witness; it confirms the theory and does not fail the check.
    #[serde(rename = "WITNESS")]
    Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub status: AssertionStatus,
    pub detail: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub numbers: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub confirms_paper: bool,
}

impl Assertion {
    pub fn pass(name: &str, detail: String) -> Self {
        Assertion {
            name: name.to_string(),
            status: AssertionStatus::Pass,
            detail,
            numbers: BTreeMap::new(),
            confirms_paper: false,
        }
    }

    pub fn fail(name: &str, detail: String) -> Self {
        Assertion {
            name: name.to_string(),
            status: AssertionStatus::Fail,
            detail,
            numbers: BTreeMap::new(),
            confirms_paper: false,
        }
    }

    pub fn check(name: &str, ok: bool, detail: String) -> Self {
        if ok {
            Assertion::pass(name, detail)
        } else {
            Assertion::fail(name, detail)
        }
    }

    pub fn witness(name: &str, detail: String) -> Self {
        Assertion {
            name: name.to_string(),
            status: AssertionStatus::Witness,
            detail,
            numbers: BTreeMap::new(),
            confirms_paper: true,
        }
    }

    pub fn with_numbers(mut self, numbers: impl IntoIterator<Item = (&'static str, u64)>) -> Self {
        self.numbers = numbers.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub command: String,
    pub check: String,
    pub file: String,
    pub parameters: BTreeMap<String, String>,
    pub assertions: Vec<Assertion>,
    pub result: String,
}

impl VerifyReport {
    pub fn new(check: &str, file: &str, parameters: BTreeMap<String, String>) -> Self {
        VerifyReport {
            command: "verify".to_string(),
            check: check.to_string(),
            file: file.to_string(),
            parameters,
            assertions: Vec::new(),
            result: String::new(),
        }
    }

    pub fn push(&mut self, assertion: Assertion) {
        self.assertions.push(assertion);
    }

    pub fn finalize(&mut self) -> bool {
        let ok = self.assertions.iter().all(|a| a.status != AssertionStatus::Fail);
        self.result = if ok { "PASS".to_string() } else { "FAIL".to_string() };
        ok
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let params = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        if params.is_empty() {
            let _ = writeln!(out, "verify {} on {}", self.check, self.file);
        } else {
            let _ = writeln!(out, "verify {} on {} ({params})", self.check, self.file);
        }
        for a in &self.assertions {
            let tag = match a.status {
                AssertionStatus::Pass => "PASS",
                AssertionStatus::Fail => "FAIL",
                AssertionStatus::Witness => "WITNESS",
            };
            let suffix = if a.confirms_paper { " [CONFIRMS-PAPER]" } else { "" };
            let _ = writeln!(out, "{tag} {}: {}{suffix}", a.name, a.detail);
        }
        let _ = writeln!(out, "result: {}", self.result);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub command: String,
    pub file: String,
    pub q: u64,
    pub jet_order: Option<u32>,
    pub fiber: Option<String>,
    pub generators: Vec<GeneratorInfo>,
    pub count: u64,
}

impl CountReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "count on {} over F{}", self.file, self.q);
        if let Some(m) = self.jet_order {
            let _ = writeln!(out, "jet order: {m}");
        }
        if let Some(fiber) = &self.fiber {
            let _ = writeln!(out, "fiber at: {fiber}");
        }
        let _ = writeln!(
            out,
            "generators: {}",
            self.generators.iter().map(|g| g.name.clone()).collect::<Vec<_>>().join(", ")
        );
        let _ = writeln!(out, "points: {}", self.count);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub representative: String,
    pub size: u64,
    pub stabilizer_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsReport {
    pub command: String,
    pub file: String,
    pub q: u64,
    pub jet_order: Option<u32>,
    pub fiber: String,
    pub total_points: u64,
    pub zero_section_points: u64,
    pub orbit_count: u64,
    /// Smallest twist degree that is a line sheaf on the projectivized jet
    /// space; absent when the jet order is 0 (empty scheme).
    pub line_sheaf_degree: Option<u64>,
    pub dilations_preserve_relations: bool,
    pub orbit_sizes_divide_group: bool,
    pub orbits: Vec<OrbitEntry>,
}

impl OrbitsReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dilation orbits on {} over F{}", self.file, self.q);
        if let Some(m) = self.jet_order {
            let _ = writeln!(out, "jet order: {m}");
        }
        let _ = writeln!(out, "fiber at: {}", self.fiber);
        let _ = writeln!(
            out,
            "points: {} ({} on the zero section)",
            self.total_points, self.zero_section_points
        );
        match self.line_sheaf_degree {
            Some(d) => {
                let _ = writeln!(out, "line sheaf degree: {d}");
            }
            None => {
                let _ = writeln!(out, "line sheaf degree: none (order 0 projectivizes to the empty scheme)");
            }
        }
        let _ = writeln!(
            out,
            "dilated points satisfy relations: {}",
            if self.dilations_preserve_relations { "yes" } else { "NO" }
        );
        let _ = writeln!(
            out,
            "orbit sizes divide q-1: {}",
            if self.orbit_sizes_divide_group { "yes" } else { "NO" }
        );
        let _ = writeln!(out, "orbits ({}):", self.orbit_count);
        for o in &self.orbits {
            let _ = writeln!(
                out,
                "  size {} stabilizer {}  representative ({})",
                o.size, o.stabilizer_size, o.representative
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedReport {
    pub command: String,
    pub file: String,
    pub map: Vec<String>,
    pub q: u64,
    pub jet_order: u32,
    pub induced_images: Vec<String>,
    pub target_points: u64,
    pub image_points: u64,
    pub surjective: bool,
    pub non_image: Vec<String>,
}

impl InducedReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "induced jet map on {} (m={}, q={})",
            self.file, self.jet_order, self.q
        );
        let _ = writeln!(out, "base map: {}", self.map.join("; "));
        let _ = writeln!(out, "induced on generators:");
        for line in &self.induced_images {
            let _ = writeln!(out, "  {line}");
        }
        let _ = writeln!(out, "target points: {}", self.target_points);
        let _ = writeln!(out, "image points: {}", self.image_points);
        let _ = writeln!(out, "surjective: {}", if self.surjective { "yes" } else { "no" });
        if !self.non_image.is_empty() {
            let _ = writeln!(out, "points outside the image ({}):", self.non_image.len());
            for p in &self.non_image {
                let _ = writeln!(out, "  ({p})");
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingFormReport {
    pub command: String,
    pub file: String,
    pub b: String,
    pub e_vars: Vec<String>,
    pub jet_order: u32,
    pub leading_form: String,
}

impl LeadingFormReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "leading form of {} along E = {{{}}} at order {}",
            self.b,
            self.e_vars.join(", "),
            self.jet_order
        );
        let _ = writeln!(out, "restriction: {}", self.leading_form);
        out
    }
}
