//! Attribute time series over fixed detection-day buckets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{InfectionDirection, TemporalGraph};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttributeBucket {
    /// Bucket covers detect days [start_day, end_day).
    pub start_day: i64,
    pub end_day: i64,
    pub detections: usize,
    pub by_method: BTreeMap<String, usize>,
    pub by_group: BTreeMap<String, usize>,
    pub by_province: BTreeMap<String, usize>,
    /// Means over this bucket's detectees that carry the field.
    pub mean_contacts_declared: Option<f64>,
    pub mean_contacts_tested: Option<f64>,
    pub mean_contacts_positive: Option<f64>,
    /// Mean of positive/tested over detectees with tested > 0.
    pub mean_positive_rate: Option<f64>,
    /// Cumulative infection arcs by "InfectorGroup->InfecteeGroup", counted
    /// over the network as of the bucket's last day.
    pub cum_infections_by_group: BTreeMap<String, usize>,
    /// Fraction of contact edges present at the bucket's last day that carry
    /// an infection arc; 0 when no edges are present yet.
    pub infectious_edge_fraction: f64,
}

pub fn attribute_timeseries(g: &TemporalGraph, bucket_days: i64) -> Result<Vec<AttributeBucket>> {
    if bucket_days < 1 {
        return Err(Error::InvalidConfig(format!(
            "bucket_days must be >= 1, got {bucket_days}"
        )));
    }
    let Some(max_day) = g.max_detect_day() else {
        return Ok(Vec::new());
    };
    let bucket_count = (max_day / bucket_days + 1) as usize;

    // Edge appearance day is the later endpoint's detection day.
    struct EdgeInfo {
        appear: i64,
        arc_groups: Option<(String, String)>,
    }
    let mut edge_infos: Vec<EdgeInfo> = g
        .edges()
        .iter()
        .map(|e| {
            let va = g.vertex(&e.a).expect("validated");
            let vb = g.vertex(&e.b).expect("validated");
            let arc_groups = e.infection.map(|dir| match dir {
                InfectionDirection::AToB => {
                    (va.group.as_str().to_string(), vb.group.as_str().to_string())
                }
                InfectionDirection::BToA => {
                    (vb.group.as_str().to_string(), va.group.as_str().to_string())
                }
            });
            EdgeInfo { appear: va.detect_day.max(vb.detect_day), arc_groups }
        })
        .collect();
    edge_infos.sort_by_key(|e| e.appear);

    let mut buckets: Vec<AttributeBucket> = (0..bucket_count)
        .map(|k| AttributeBucket {
            start_day: k as i64 * bucket_days,
            end_day: (k as i64 + 1) * bucket_days,
            detections: 0,
            by_method: BTreeMap::new(),
            by_group: BTreeMap::new(),
            by_province: BTreeMap::new(),
            mean_contacts_declared: None,
            mean_contacts_tested: None,
            mean_contacts_positive: None,
            mean_positive_rate: None,
            cum_infections_by_group: BTreeMap::new(),
            infectious_edge_fraction: 0.0,
        })
        .collect();

    struct Acc {
        declared: (f64, usize),
        tested: (f64, usize),
        positive: (f64, usize),
        rate: (f64, usize),
    }
    let mut accs: Vec<Acc> = (0..bucket_count)
        .map(|_| Acc { declared: (0.0, 0), tested: (0.0, 0), positive: (0.0, 0), rate: (0.0, 0) })
        .collect();

    for v in g.vertices() {
        let k = (v.detect_day / bucket_days) as usize;
        let b = &mut buckets[k];
        b.detections += 1;
        *b.by_method.entry(v.method.as_str().to_string()).or_insert(0) += 1;
        *b.by_group.entry(v.group.as_str().to_string()).or_insert(0) += 1;
        *b.by_province.entry(v.province.clone()).or_insert(0) += 1;
        let acc = &mut accs[k];
        if let Some(d) = v.contacts_declared {
            acc.declared.0 += d as f64;
            acc.declared.1 += 1;
        }
        if let Some(t) = v.contacts_tested {
            acc.tested.0 += t as f64;
            acc.tested.1 += 1;
            if t > 0 {
                if let Some(p) = v.contacts_positive {
                    acc.rate.0 += p as f64 / t as f64;
                    acc.rate.1 += 1;
                }
            }
        }
        if let Some(p) = v.contacts_positive {
            acc.positive.0 += p as f64;
            acc.positive.1 += 1;
        }
    }

    let mean = |(sum, n): (f64, usize)| if n > 0 { Some(sum / n as f64) } else { None };
    let mut edge_cursor = 0usize;
    let mut edges_present = 0usize;
    let mut arcs_present = 0usize;
    let mut cum_groups: BTreeMap<String, usize> = BTreeMap::new();
    for (k, b) in buckets.iter_mut().enumerate() {
        let acc = &accs[k];
        b.mean_contacts_declared = mean(acc.declared);
        b.mean_contacts_tested = mean(acc.tested);
        b.mean_contacts_positive = mean(acc.positive);
        b.mean_positive_rate = mean(acc.rate);

        let last_day = b.end_day - 1;
        while edge_cursor < edge_infos.len() && edge_infos[edge_cursor].appear <= last_day {
            let info = &edge_infos[edge_cursor];
            edges_present += 1;
            if let Some((from, to)) = &info.arc_groups {
                arcs_present += 1;
                *cum_groups.entry(format!("{from}->{to}")).or_insert(0) += 1;
            }
            edge_cursor += 1;
        }
        b.cum_infections_by_group = cum_groups.clone();
        b.infectious_edge_fraction = if edges_present > 0 {
            arcs_present as f64 / edges_present as f64
        } else {
            0.0
        };
    }
    Ok(buckets)
}
