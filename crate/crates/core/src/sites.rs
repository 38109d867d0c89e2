//! Turning RFID read events into an instance: one city per reader site.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::generate::{check_alpha, perturbed_costs, quantize};
use crate::instance::{Instance, Point};
use crate::rng::RandomSource;

/// One observation of a tag by a reader.
#[derive(Debug, Clone, PartialEq)]
pub struct ReadEvent {
    pub tag_id: String,
    pub reader_id: String,
    pub timestamp_ms: u64,
    pub x_m: f64,
    pub y_m: f64,
}

impl ReadEvent {
    pub fn validate(&self) -> Result<()> {
        if self.tag_id.is_empty() {
            return Err(Error::InvalidEvent("empty tag_id".into()));
        }
        if self.reader_id.is_empty() {
            return Err(Error::InvalidEvent("empty reader_id".into()));
        }
        if !self.x_m.is_finite() || !self.y_m.is_finite() {
            return Err(Error::InvalidEvent(format!(
                "non-finite position for reader {}",
                self.reader_id
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Site {
    pub reader_id: String,
    pub position: Point,
    pub last_seen_ms: u64,
}

/// Reader sites in first-appearance order.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteMap {
    sites: Vec<Site>,
    index: BTreeMap<String, usize>,
    depot_reader: String,
}

impl SiteMap {
    pub fn from_events(events: &[ReadEvent], depot_reader: &str) -> Result<Self> {
        let mut sites: Vec<Site> = Vec::new();
        let mut index = BTreeMap::new();
        for ev in events {
            ev.validate()?;
            let position = Point::new(ev.x_m, ev.y_m);
            match index.get(&ev.reader_id) {
                Some(&i) => {
                    let site: &mut Site = &mut sites[i];
                    if site.position != position {
                        return Err(Error::InconsistentSite(ev.reader_id.clone()));
                    }
                    site.last_seen_ms = site.last_seen_ms.max(ev.timestamp_ms);
                }
                None => {
                    index.insert(ev.reader_id.clone(), sites.len());
                    sites.push(Site {
                        reader_id: ev.reader_id.clone(),
                        position,
                        last_seen_ms: ev.timestamp_ms,
                    });
                }
            }
        }
        if !index.contains_key(depot_reader) {
            return Err(Error::UnknownDepot(depot_reader.into()));
        }
        Ok(SiteMap { sites, index, depot_reader: depot_reader.into() })
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn get(&self, reader_id: &str) -> Option<&Site> {
        self.index.get(reader_id).map(|&i| &self.sites[i])
    }

    pub fn depot_reader(&self) -> &str {
        &self.depot_reader
    }

    /// Sites in city order: the depot first, the rest in first-appearance order.
    pub fn city_order(&self) -> Vec<&Site> {
        let depot = self.index[&self.depot_reader];
        core::iter::once(&self.sites[depot])
            .chain(self.sites.iter().enumerate().filter(|&(i, _)| i != depot).map(|(_, s)| s))
            .collect()
    }
}

/// Builds an instance with one city per distinct reader. Costs use the same
/// rounding and perturbation scheme as [`crate::generate_instance`].
pub fn build_instance_from_events(
    events: &[ReadEvent],
    depot_reader: &str,
    asymmetry_alpha: f64,
    source: &mut RandomSource,
) -> Result<Instance> {
    check_alpha(asymmetry_alpha)?;
    if events.is_empty() {
        return Err(Error::InvalidEvent("event log is empty".into()));
    }
    let map = SiteMap::from_events(events, depot_reader)?;
    let coords: Vec<Point> = map
        .city_order()
        .iter()
        .map(|s| Point::new(quantize(s.position.x), quantize(s.position.y)))
        .collect();
    let costs = perturbed_costs(&coords, asymmetry_alpha, source);
    Instance::new(format!("rfid-n{}", coords.len()), costs, Some(coords), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ev(tag: &str, reader: &str, t: u64, x: f64, y: f64) -> ReadEvent {
        ReadEvent { tag_id: tag.into(), reader_id: reader.into(), timestamp_ms: t, x_m: x, y_m: y }
    }

    #[test]
    fn depot_only_log() {
        let events = vec![ev("t1", "D", 0, 1.0, 2.0), ev("t2", "D", 5, 1.0, 2.0)];
        let inst = build_instance_from_events(&events, "D", 0.3, &mut RandomSource::new(1)).unwrap();
        assert_eq!(inst.len(), 1);
        assert_eq!(inst.cost(0, 0), 0);
    }

    #[test]
    fn three_four_five() {
        let events = vec![ev("a", "D", 0, 0.0, 0.0), ev("a", "S", 10, 3.0, 4.0)];
        let inst = build_instance_from_events(&events, "D", 0.0, &mut RandomSource::new(1)).unwrap();
        assert_eq!(inst.cost(0, 1), 5);
        assert_eq!(inst.cost(1, 0), 5);
    }

    #[test]
    fn depot_moves_to_front() {
        let events = vec![
            ev("a", "S1", 0, 0.0, 0.0),
            ev("a", "S2", 1, 10.0, 0.0),
            ev("b", "D", 2, 5.0, 5.0),
            ev("c", "S3", 3, 1.0, 1.0),
        ];
        let map = SiteMap::from_events(&events, "D").unwrap();
        let ids: Vec<&str> = map.city_order().iter().map(|s| s.reader_id.as_str()).collect();
        assert_eq!(ids, ["D", "S1", "S2", "S3"]);
        let inst = build_instance_from_events(&events, "D", 0.0, &mut RandomSource::new(1)).unwrap();
        assert_eq!(inst.coords().unwrap()[0], Point::new(5.0, 5.0));
    }

    #[test]
    fn conflicting_position_rejected() {
        let events = vec![ev("a", "D", 0, 0.0, 0.0), ev("b", "D", 1, 0.0, 0.5)];
        assert_eq!(
            build_instance_from_events(&events, "D", 0.0, &mut RandomSource::new(1)).unwrap_err(),
            Error::InconsistentSite("D".into())
        );
    }

    #[test]
    fn unknown_depot_rejected() {
        let events = vec![ev("a", "S", 0, 0.0, 0.0)];
        assert_eq!(
            build_instance_from_events(&events, "D", 0.0, &mut RandomSource::new(1)).unwrap_err(),
            Error::UnknownDepot("D".into())
        );
    }

    #[test]
    fn last_seen_tracks_latest_read() {
        let events = vec![ev("a", "D", 50, 0.0, 0.0), ev("b", "D", 20, 0.0, 0.0), ev("c", "D", 70, 0.0, 0.0)];
        let map = SiteMap::from_events(&events, "D").unwrap();
        assert_eq!(map.get("D").unwrap().last_seen_ms, 70);
    }
}
