//! Seeded dataset generators.
//!
//! `synth_epidemic` simulates a contact-traced epidemic and emits the
//! detected part of it in the ingestion format. `synth_planted_temporal`
//! builds block graphs with known cluster labels and temporally separated
//! detection windows, for validating the clustering and homogeneity tests.

use std::path::Path;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric, Normal, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DetectionMethod, EdgeRecord, Group, InfectionDirection, TemporalGraph, VertexRecord};
use crate::rng::rng_from_seed;

/// Mean days from a partner's infection back to the infector's, on top of the
/// mandatory 1-day step that keeps infection days strictly increasing along
/// transmission chains.
const TRANSMISSION_LAG_MEAN_DAYS: f64 = 90.0;

/// Mean days an index case stays undetected before background screening
/// catches them.
const BACKGROUND_LAG_MEAN_DAYS: f64 = 365.0;

/// Probability that a declared partner who escaped transmission from this
/// partnership is HIV-positive anyway (infected outside the recorded
/// network). Such partners seed their own infection tree, so components can
/// contain several trees joined by non-infectious edges.
const OUTSIDE_INFECTION_PROB: f64 = 0.10;

/// Partner-group preferences within the orientation constraints: women pair
/// mostly with heterosexual men, MSM mostly with other MSM.
const WOMAN_PARTNER_HETERO_PROB: f64 = 0.8;
const MSM_PARTNER_MSM_PROB: f64 = 0.8;

const AGE_KNOWN_PROB: f64 = 0.9;

/// Background (non-traced) detection methods and their sampling weights.
const BACKGROUND_METHODS: [(DetectionMethod, f64); 7] = [
    (DetectionMethod::BloodDonor, 0.18),
    (DetectionMethod::RandomTest, 0.22),
    (DetectionMethod::StdTest, 0.15),
    (DetectionMethod::Prisoner, 0.12),
    (DetectionMethod::DoctorRecommendation, 0.13),
    (DetectionMethod::Voluntary, 0.15),
    (DetectionMethod::Other, 0.05),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    /// Simulated days; detections happen on days 0..horizon_days.
    pub horizon_days: i64,
    /// Relative weights of index-case groups: [Woman, HeterosexualMan, MSM].
    pub group_mix: [f64; 3],
    /// Exponent of the truncated discrete power law for partner counts.
    pub partner_exponent: f64,
    /// Largest declarable partner count.
    pub partner_cap: usize,
    /// Probability a partnership with an infected person transmits.
    pub transmission_prob: f64,
    /// Probability a declared contact is successfully located.
    pub tracing_prob: f64,
    /// Mean of the geometric delay between detection and a traced contact's
    /// test; 0 means contacts are tested the same day.
    pub tracing_delay_mean_days: f64,
    /// Poisson rate of background-screening detections per day.
    pub background_rate_per_day: f64,
    pub province_count: usize,
    /// Probability a partner lives in the same province.
    pub province_mixing_bias: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            horizon_days: 2000,
            group_mix: [0.30, 0.45, 0.25],
            partner_exponent: 2.3,
            partner_cap: 50,
            transmission_prob: 0.40,
            tracing_prob: 0.55,
            tracing_delay_mean_days: 60.0,
            background_rate_per_day: 0.5,
            province_count: 12,
            province_mixing_bias: 0.75,
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.horizon_days < 1 {
            return bad(format!("horizon_days must be >= 1, got {}", self.horizon_days));
        }
        if self.group_mix.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return bad("group_mix weights must be finite and >= 0".into());
        }
        if self.group_mix.iter().sum::<f64>() <= 0.0 {
            return bad("group_mix weights must not all be zero".into());
        }
        if !(self.partner_exponent > 1.0) {
            return bad(format!("partner_exponent must be > 1, got {}", self.partner_exponent));
        }
        if self.partner_cap < 1 {
            return bad("partner_cap must be >= 1".into());
        }
        for (name, p) in [
            ("transmission_prob", self.transmission_prob),
            ("tracing_prob", self.tracing_prob),
            ("province_mixing_bias", self.province_mixing_bias),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must be in [0, 1], got {p}"));
            }
        }
        if !(self.tracing_delay_mean_days >= 0.0) {
            return bad(format!(
                "tracing_delay_mean_days must be >= 0, got {}",
                self.tracing_delay_mean_days
            ));
        }
        if !(self.background_rate_per_day > 0.0) {
            return bad(format!(
                "background_rate_per_day must be > 0, got {}",
                self.background_rate_per_day
            ));
        }
        if self.province_count < 1 {
            return bad("province_count must be >= 1".into());
        }
        Ok(())
    }
}

struct Person {
    group: Group,
    province: usize,
    age: Option<f64>,
    infected: bool,
    infect_day: i64,
    infector: Option<usize>,
    /// Fresh partners declared by this person (filled at infection time; only
    /// infected people are ever asked).
    partners: Vec<usize>,
    detected: Option<i64>,
    method: DetectionMethod,
    tested: u32,
    positive: u32,
}

/// Geometric sample with the given mean; mean 0 collapses to the constant 0.
fn geometric_days(rng: &mut ChaCha8Rng, mean: f64) -> i64 {
    if mean <= 0.0 {
        return 0;
    }
    let p = 1.0 / (1.0 + mean);
    Geometric::new(p).expect("p in (0, 1]").sample(rng) as i64
}

fn sample_weighted<T: Copy>(rng: &mut ChaCha8Rng, table: &[(T, f64)]) -> T {
    let total: f64 = table.iter().map(|&(_, w)| w).sum();
    let mut u = rng.random::<f64>() * total;
    for &(item, w) in table {
        u -= w;
        if u <= 0.0 {
            return item;
        }
    }
    table[table.len() - 1].0
}

fn partner_group(rng: &mut ChaCha8Rng, of: Group) -> Group {
    match of {
        Group::Woman => {
            if rng.random_bool(WOMAN_PARTNER_HETERO_PROB) {
                Group::HeterosexualMan
            } else {
                Group::Msm
            }
        }
        Group::HeterosexualMan => Group::Woman,
        Group::Msm => {
            if rng.random_bool(MSM_PARTNER_MSM_PROB) {
                Group::Msm
            } else {
                Group::Woman
            }
        }
    }
}

/// Cumulative weights of the truncated power law P(k) ~ k^-alpha, k = 1..=cap.
fn partner_count_cdf(alpha: f64, cap: usize) -> Vec<f64> {
    let mut cum = Vec::with_capacity(cap);
    let mut total = 0.0;
    for k in 1..=cap {
        total += (k as f64).powf(-alpha);
        cum.push(total);
    }
    cum
}

fn sample_partner_count(rng: &mut ChaCha8Rng, cdf: &[f64]) -> usize {
    let u = rng.random::<f64>() * cdf[cdf.len() - 1];
    cdf.partition_point(|&c| c < u) + 1
}

struct Sim<'a> {
    cfg: &'a SynthConfig,
    rng: ChaCha8Rng,
    partner_cdf: Vec<f64>,
    people: Vec<Person>,
    /// day -> (tracing source, tested contact), in schedule order.
    tests: std::collections::BTreeMap<i64, Vec<(usize, usize)>>,
}

impl Sim<'_> {
    fn create_person(&mut self, group: Group, province: usize) -> usize {
        let age = if self.rng.random_bool(AGE_KNOWN_PROB) {
            let a: f64 = Normal::new(35.0, 10.0).expect("valid").sample(&mut self.rng);
            Some(a.round().clamp(15.0, 79.0))
        } else {
            None
        };
        self.people.push(Person {
            group,
            province,
            age,
            infected: false,
            infect_day: 0,
            infector: None,
            partners: Vec::new(),
            detected: None,
            method: DetectionMethod::Other,
            tested: 0,
            positive: 0,
        });
        self.people.len() - 1
    }

    fn partner_province(&mut self, of: usize) -> usize {
        if self.rng.random_bool(self.cfg.province_mixing_bias) {
            self.people[of].province
        } else {
            self.rng.random_range(0..self.cfg.province_count)
        }
    }

    /// Mark `root` infected on `root_day` and expand the latent transmission
    /// tree below it. Partners whose infection would start after the horizon
    /// are left uninfected: no test inside the horizon could ever see them
    /// positive, so dropping them does not change the observable output.
    fn infect_tree(&mut self, root: usize, root_day: i64, root_infector: Option<usize>) {
        let last_day = self.cfg.horizon_days - 1;
        let mut stack = vec![(root, root_day, root_infector)];
        while let Some((idx, infect_day, infector)) = stack.pop() {
            self.people[idx].infected = true;
            self.people[idx].infect_day = infect_day;
            self.people[idx].infector = infector;
            let group = self.people[idx].group;
            let m = sample_partner_count(&mut self.rng, &self.partner_cdf);
            for _ in 0..m {
                let pg = partner_group(&mut self.rng, group);
                let pp = self.partner_province(idx);
                let child = self.create_person(pg, pp);
                self.people[idx].partners.push(child);
                let child_day =
                    infect_day + 1 + geometric_days(&mut self.rng, TRANSMISSION_LAG_MEAN_DAYS);
                if self.rng.random_bool(self.cfg.transmission_prob) {
                    if child_day <= last_day {
                        stack.push((child, child_day, Some(idx)));
                    }
                } else if self.rng.random_bool(OUTSIDE_INFECTION_PROB) && child_day <= last_day {
                    stack.push((child, child_day, None));
                }
            }
        }
    }

    /// Record a detection and schedule tests for the traced contacts. The
    /// contacts a person can name are their declared partners plus their
    /// infector when known.
    fn detect(&mut self, idx: usize, day: i64, method: DetectionMethod) {
        debug_assert!(self.people[idx].detected.is_none());
        self.people[idx].detected = Some(day);
        self.people[idx].method = method;
        let mut contacts = self.people[idx].partners.clone();
        if let Some(parent) = self.people[idx].infector {
            contacts.push(parent);
        }
        let last_day = self.cfg.horizon_days - 1;
        for contact in contacts {
            if self.rng.random_bool(self.cfg.tracing_prob) {
                let test_day =
                    day + geometric_days(&mut self.rng, self.cfg.tracing_delay_mean_days);
                if test_day <= last_day {
                    self.tests.entry(test_day).or_default().push((idx, contact));
                }
            }
        }
    }

    fn run(&mut self) {
        let poisson = Poisson::new(self.cfg.background_rate_per_day).expect("validated rate");
        let mix: Vec<(Group, f64)> =
            Group::ALL.iter().copied().zip(self.cfg.group_mix).collect();
        for day in 0..self.cfg.horizon_days {
            let seeds = poisson.sample(&mut self.rng) as u64;
            for _ in 0..seeds {
                let group = sample_weighted(&mut self.rng, &mix);
                let province = self.rng.random_range(0..self.cfg.province_count);
                let person = self.create_person(group, province);
                let infect_day = day - geometric_days(&mut self.rng, BACKGROUND_LAG_MEAN_DAYS);
                self.infect_tree(person, infect_day, None);
                let method = sample_weighted(&mut self.rng, &BACKGROUND_METHODS);
                self.detect(person, day, method);
            }
            // Scheduled tests; same-day tracing can append while we drain.
            let mut i = 0;
            loop {
                let Some(&(source, target)) = self.tests.get(&day).and_then(|v| v.get(i)) else {
                    break;
                };
                i += 1;
                self.people[source].tested += 1;
                let t = &self.people[target];
                if t.infected && t.infect_day <= day {
                    self.people[source].positive += 1;
                    if self.people[target].detected.is_none() {
                        self.detect(target, day, DetectionMethod::ContactTraced);
                    }
                }
            }
        }
    }

    fn output(&self) -> Result<TemporalGraph> {
        let detected: Vec<usize> =
            (0..self.people.len()).filter(|&i| self.people[i].detected.is_some()).collect();
        if detected.is_empty() {
            return TemporalGraph::new(Vec::new(), Vec::new());
        }
        let shift = detected
            .iter()
            .map(|&i| self.people[i].detected.expect("filtered"))
            .min()
            .expect("nonempty");
        let width = (self.people.len().max(2) - 1).ilog10() as usize + 1;
        let id_of = |i: usize| format!("p{i:0width$}");
        let vertices: Vec<VertexRecord> = detected
            .iter()
            .map(|&i| {
                let p = &self.people[i];
                VertexRecord {
                    id: id_of(i),
                    detect_day: p.detected.expect("filtered") - shift,
                    group: p.group,
                    method: p.method,
                    province: format!("P{:02}", p.province + 1),
                    infect_day: Some(p.infect_day - shift),
                    age: p.age,
                    contacts_declared: Some(
                        (p.partners.len() + usize::from(p.infector.is_some())) as u32,
                    ),
                    contacts_tested: Some(p.tested),
                    contacts_positive: Some(p.positive),
                }
            })
            .collect();
        let mut edges = Vec::new();
        for &i in &detected {
            for &c in &self.people[i].partners {
                if self.people[c].detected.is_some() {
                    let infection = (self.people[c].infector == Some(i))
                        .then_some(InfectionDirection::AToB);
                    edges.push(EdgeRecord { a: id_of(i), b: id_of(c), infection });
                }
            }
        }
        TemporalGraph::new(vertices, edges)
    }
}

pub fn synth_epidemic(cfg: &SynthConfig) -> Result<TemporalGraph> {
    cfg.validate()?;
    let mut sim = Sim {
        cfg,
        rng: rng_from_seed(cfg.seed),
        partner_cdf: partner_count_cdf(cfg.partner_exponent, cfg.partner_cap),
        people: Vec::new(),
        tests: std::collections::BTreeMap::new(),
    };
    sim.run();
    sim.output()
}

/// Block graph with planted clusters and temporally separated detection
/// windows: block b's detections fall uniformly in
/// [b*(spread+gap), b*(spread+gap)+spread]. Returns the graph together with
/// (vertex id, block) labels.
pub fn synth_planted_temporal(
    clusters: usize,
    size: usize,
    p_in: f64,
    p_out: f64,
    date_spread_within: i64,
    date_gap_between: i64,
    seed: u64,
) -> Result<(TemporalGraph, Vec<(String, usize)>)> {
    if clusters < 2 || size < 2 {
        return Err(Error::InvalidConfig(format!(
            "need at least 2 clusters of 2 vertices, got {clusters} x {size}"
        )));
    }
    for (name, p) in [("p_in", p_in), ("p_out", p_out)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidConfig(format!("{name} must be in [0, 1], got {p}")));
        }
    }
    if p_in <= p_out {
        return Err(Error::InvalidConfig(format!(
            "p_in must exceed p_out, got {p_in} <= {p_out}"
        )));
    }
    if date_spread_within < 0 || date_gap_between < 0 {
        return Err(Error::InvalidConfig("date spread and gap must be >= 0".into()));
    }
    let mut rng = rng_from_seed(seed);
    let bw = (clusters.max(2) - 1).ilog10() as usize + 1;
    let vw = (size.max(2) - 1).ilog10() as usize + 1;
    let n_total = clusters * size;
    let mut vertices = Vec::with_capacity(n_total);
    let mut labels = Vec::with_capacity(n_total);
    for b in 0..clusters {
        let window_start = b as i64 * (date_spread_within + date_gap_between);
        for j in 0..size {
            let id = format!("b{b:0bw$}v{j:0vw$}");
            labels.push((id.clone(), b));
            vertices.push(VertexRecord {
                id,
                detect_day: window_start + rng.random_range(0..=date_spread_within),
                group: *[Group::Woman, Group::HeterosexualMan, Group::Msm]
                    .get(rng.random_range(0..3usize))
                    .expect("in range"),
                method: DetectionMethod::ALL[rng.random_range(0..DetectionMethod::ALL.len())],
                province: format!("P{:02}", rng.random_range(0..4usize) + 1),
                infect_day: None,
                age: None,
                contacts_declared: None,
                contacts_tested: None,
                contacts_positive: None,
            });
        }
    }
    let mut edges = Vec::new();
    for i in 0..n_total {
        for j in (i + 1)..n_total {
            let p = if i / size == j / size { p_in } else { p_out };
            if rng.random_bool(p) {
                edges.push(EdgeRecord::new(vertices[i].id.clone(), vertices[j].id.clone()));
            }
        }
    }
    let graph = TemporalGraph::new(vertices, edges)?;
    Ok((graph, labels))
}

/// Write planted labels as a two-column CSV.
pub fn write_labels(path: &Path, labels: &[(String, usize)]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["vertex_id", "planted_cluster"]).map_err(csv_err)?;
    for (id, cluster) in labels {
        w.write_record([id.as_str(), &cluster.to_string()]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidConfig(format!("csv write failed: {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{connected_components, infection_forest};

    fn small_cfg() -> SynthConfig {
        SynthConfig {
            horizon_days: 600,
            background_rate_per_day: 0.2,
            seed: 11,
            ..SynthConfig::default()
        }
    }

    #[test]
    fn epidemic_is_deterministic() {
        let a = synth_epidemic(&small_cfg()).unwrap();
        let b = synth_epidemic(&small_cfg()).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert_eq!(a.edges(), b.edges());
        assert!(a.vertex_count() > 20);
        let c = synth_epidemic(&SynthConfig { seed: 12, ..small_cfg() }).unwrap();
        assert_ne!(a.vertices(), c.vertices());
    }

    #[test]
    fn epidemic_respects_structural_invariants() {
        let g = synth_epidemic(&small_cfg()).unwrap();
        let report = g.validate();
        assert!(report.infect_after_detect.is_empty());
        assert!(report.contact_count_violations.is_empty());
        // Orientation constraints: no woman-woman or heterosexual-man pairs.
        for e in g.edges() {
            let (ga, gb) = (g.vertex(&e.a).unwrap().group, g.vertex(&e.b).unwrap().group);
            let ok = matches!(
                (ga, gb),
                (Group::Woman, Group::HeterosexualMan)
                    | (Group::HeterosexualMan, Group::Woman)
                    | (Group::Woman, Group::Msm)
                    | (Group::Msm, Group::Woman)
                    | (Group::Msm, Group::Msm)
            );
            assert!(ok, "incompatible pair {ga:?} - {gb:?}");
            // Arcs go strictly forward in infection time.
            if let Some(dir) = e.infection {
                let (from, to) = match dir {
                    InfectionDirection::AToB => (&e.a, &e.b),
                    InfectionDirection::BToA => (&e.b, &e.a),
                };
                let fi = g.vertex(from).unwrap().infect_day.unwrap();
                let ti = g.vertex(to).unwrap().infect_day.unwrap();
                assert!(ti > fi, "arc does not advance infection day");
            }
        }
        assert_eq!(g.vertices().iter().map(|v| v.detect_day).min(), Some(0));
    }

    #[test]
    fn zero_transmission_keeps_every_tree_at_size_one() {
        let cfg = SynthConfig { transmission_prob: 0.0, ..small_cfg() };
        let g = synth_epidemic(&cfg).unwrap();
        let snap = g.snapshot_at(g.max_detect_day().unwrap());
        let forest = infection_forest(&snap);
        assert_eq!(forest.max_size, 1);
        assert!(g.edges().iter().all(|e| e.infection.is_none()));
    }

    #[test]
    fn instant_certain_tracing_detects_partners_the_same_day() {
        let cfg = SynthConfig {
            tracing_prob: 1.0,
            tracing_delay_mean_days: 0.0,
            ..small_cfg()
        };
        let g = synth_epidemic(&cfg).unwrap();
        let snap = g.snapshot_at(g.max_detect_day().unwrap());
        for i in 0..snap.vertex_count() {
            let v = snap.record(i);
            if v.method == DetectionMethod::ContactTraced {
                let same_day = snap
                    .neighbors(i)
                    .iter()
                    .any(|&u| snap.record(u).detect_day == v.detect_day);
                assert!(same_day, "{} was traced but no neighbor shares its day", v.id);
            }
        }
    }

    #[test]
    fn planted_blocks_disconnect_without_inter_edges() {
        let (g, labels) = synth_planted_temporal(3, 6, 1.0, 0.0, 50, 500, 5).unwrap();
        assert_eq!(g.vertex_count(), 18);
        let snap = g.snapshot_at(i64::MAX);
        let comp = connected_components(&snap);
        assert_eq!(comp.count, 3);
        // Component membership coincides with the planted labels.
        for (i, (id, block)) in labels.iter().enumerate() {
            let j = snap.index_of(id).unwrap();
            assert_eq!(comp.component_of[j], comp.component_of[snap.index_of(&labels[block * 6].0).unwrap()]);
            let _ = i;
        }
    }

    #[test]
    fn zero_spread_pins_each_block_to_one_day() {
        let (g, labels) = synth_planted_temporal(4, 5, 0.8, 0.05, 0, 300, 7).unwrap();
        for (id, block) in &labels {
            assert_eq!(g.vertex(id).unwrap().detect_day, *block as i64 * 300);
        }
        for e in g.edges() {
            let (da, db) =
                (g.vertex(&e.a).unwrap().detect_day, g.vertex(&e.b).unwrap().detect_day);
            if da == db {
                continue;
            }
            // Inter-block edges span at least one full gap.
            assert!((da - db).abs() >= 300);
        }
    }

    #[test]
    fn planted_parameters_are_checked() {
        assert!(synth_planted_temporal(1, 5, 0.5, 0.1, 10, 10, 0).is_err());
        assert!(synth_planted_temporal(3, 5, 0.2, 0.5, 10, 10, 0).is_err());
        assert!(synth_planted_temporal(3, 5, 1.2, 0.1, 10, 10, 0).is_err());
        assert!(synth_planted_temporal(3, 5, 0.5, 0.1, -1, 10, 0).is_err());
        assert!(SynthConfig { horizon_days: 0, ..SynthConfig::default() }.validate().is_err());
        assert!(SynthConfig { partner_exponent: 1.0, ..SynthConfig::default() }
            .validate()
            .is_err());
        assert!(SynthConfig { tracing_prob: 1.5, ..SynthConfig::default() }.validate().is_err());
    }

    #[test]
    fn partner_counts_follow_the_truncated_law() {
        let cdf = partner_count_cdf(2.0, 4);
        // Weights 1, 1/4, 1/9, 1/16; the cap is respected and 1 dominates.
        let mut rng = rng_from_seed(3);
        let mut counts = [0usize; 5];
        for _ in 0..20_000 {
            counts[sample_partner_count(&mut rng, &cdf)] += 1;
        }
        assert_eq!(counts[0], 0);
        let total: f64 = 1.0 + 0.25 + 1.0 / 9.0 + 1.0 / 16.0;
        assert!((counts[1] as f64 / 20_000.0 - 1.0 / total).abs() < 0.02);
        assert!(counts[4] > 0);
    }
}
