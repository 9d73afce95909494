//! Cluster topology and name-based content resolution.
//!
//! Machine-room clusters form an undirected graph; each cluster hosts a
//! router, a content cache, and a set of base stations. A request enters at
//! its serving cluster and is answered either by flooding for the nearest
//! cached copy ([`flood_resolve`]) or by routing to a fixed origin server
//! regardless of caches ([`ip_baseline_resolve`]). Hop counts start at 1 for
//! the serving cluster itself; [`path_length`] turns a hop count into fiber
//! geometry.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// One machine-room cluster: router, cache, and the base stations it hosts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    /// Topology-unique identifier.
    pub id: u32,
    /// Nodal degree figure of the cluster's optical cross-connect (a power
    /// model input; not derived from the edge list).
    pub degree: u32,
    /// Content names held in this cluster's cache.
    pub cache: BTreeSet<String>,
}

impl Cluster {
    /// A cluster with an empty cache.
    pub fn new(id: u32, degree: u32) -> Self {
        Cluster {
            id,
            degree,
            cache: BTreeSet::new(),
        }
    }
}

/// Request for a named data object, entering at a serving cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdoRequest {
    /// Name of the requested data object.
    pub name: String,
    /// Cluster whose base station the requesting user is attached to.
    pub serving_cluster: u32,
}

/// Where a request is satisfied: hop count and the answering cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    /// Routers traversed, counting the serving cluster as hop 1.
    pub hops: usize,
    /// Cluster that answers the request.
    pub source_cluster: u32,
}

/// Trunk and tail fiber geometry implied by a hop count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGeometry {
    /// Inter-cluster trunk fiber, km: `(hops - 1) * hop_distance`.
    pub trunk_km: f64,
    /// Serving-cluster-to-base-station tail, km.
    pub tail_km: f64,
}

/// Static cluster graph with per-cluster caches and link geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterTopology {
    /// Clusters sorted by id.
    clusters: Vec<Cluster>,
    /// Neighbour lists keyed by cluster id, each sorted ascending.
    adjacency: BTreeMap<u32, Vec<u32>>,
    /// Inter-cluster trunk distance per hop, km.
    pub hop_distance_km: f64,
    /// Cluster-to-base-station tail, km.
    pub bs_tail_km: f64,
    /// Base stations hosted per cluster.
    pub bs_per_cluster: u32,
    /// Cluster acting as the fixed origin server for the address-based
    /// baseline, if designated.
    pub origin_server: Option<u32>,
}

impl ClusterTopology {
    /// Builds a topology from clusters and undirected edges. Ids must be
    /// unique, edges must reference known ids, and distances must be positive
    /// (the tail may be zero).
    pub fn new(
        clusters: Vec<Cluster>,
        edges: &[(u32, u32)],
        hop_distance_km: f64,
        bs_tail_km: f64,
        bs_per_cluster: u32,
    ) -> Result<Self> {
        if clusters.is_empty() {
            return Err(Error::InvalidTopology("no clusters".into()));
        }
        if !(hop_distance_km > 0.0) {
            return Err(Error::InvalidTopology(format!(
                "hop distance must be positive, got {hop_distance_km} km"
            )));
        }
        if bs_tail_km < 0.0 {
            return Err(Error::InvalidTopology(format!(
                "base-station tail must be non-negative, got {bs_tail_km} km"
            )));
        }
        let mut sorted = clusters;
        sorted.sort_by_key(|c| c.id);
        let mut adjacency: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for c in &sorted {
            if adjacency.insert(c.id, Vec::new()).is_some() {
                return Err(Error::InvalidTopology(format!("duplicate cluster id {}", c.id)));
            }
        }
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidTopology(format!("self-loop on cluster {a}")));
            }
            for id in [a, b] {
                if !adjacency.contains_key(&id) {
                    return Err(Error::InvalidTopology(format!(
                        "edge ({a}, {b}) references unknown cluster {id}"
                    )));
                }
            }
            adjacency.get_mut(&a).unwrap().push(b);
            adjacency.get_mut(&b).unwrap().push(a);
        }
        for neighbours in adjacency.values_mut() {
            neighbours.sort_unstable();
            neighbours.dedup();
        }
        Ok(ClusterTopology {
            clusters: sorted,
            adjacency,
            hop_distance_km,
            bs_tail_km,
            bs_per_cluster,
            origin_server: None,
        })
    }

    /// A linear chain of `n` clusters with ids `0..n`, consecutive ids
    /// connected, every cluster at the given cross-connect degree figure.
    pub fn chain(
        n: usize,
        degree: u32,
        hop_distance_km: f64,
        bs_tail_km: f64,
        bs_per_cluster: u32,
    ) -> Result<Self> {
        let clusters = (0..n as u32).map(|id| Cluster::new(id, degree)).collect();
        let edges: Vec<(u32, u32)> = (1..n as u32).map(|id| (id - 1, id)).collect();
        ClusterTopology::new(clusters, &edges, hop_distance_km, bs_tail_km, bs_per_cluster)
    }

    /// Designates the fixed origin-server cluster for the address-based
    /// baseline.
    pub fn with_origin_server(mut self, id: u32) -> Result<Self> {
        if !self.adjacency.contains_key(&id) {
            return Err(Error::UnknownCluster(id));
        }
        self.origin_server = Some(id);
        Ok(self)
    }

    /// All clusters, sorted by id.
    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    /// The cluster with the given id.
    pub fn cluster(&self, id: u32) -> Result<&Cluster> {
        self.clusters
            .iter()
            .find(|c| c.id == id)
            .ok_or(Error::UnknownCluster(id))
    }

    /// Adds a name to a cluster's cache.
    pub fn add_cache_entry(&mut self, id: u32, name: &str) -> Result<()> {
        let cluster = self
            .clusters
            .iter_mut()
            .find(|c| c.id == id)
            .ok_or(Error::UnknownCluster(id))?;
        cluster.cache.insert(name.to_string());
        Ok(())
    }

    /// Breadth-first hop distances from a cluster to every reachable cluster
    /// (0 for the start itself). Neighbour expansion follows ascending ids,
    /// so the traversal is deterministic.
    fn distances_from(&self, from: u32) -> BTreeMap<u32, usize> {
        let mut dist = BTreeMap::new();
        dist.insert(from, 0usize);
        let mut queue = VecDeque::from([from]);
        while let Some(id) = queue.pop_front() {
            let d = dist[&id];
            for &next in &self.adjacency[&id] {
                if !dist.contains_key(&next) {
                    dist.insert(next, d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }
}

/// True when the given cluster currently caches the name.
pub fn cache_lookup(topology: &ClusterTopology, cluster: u32, name: &str) -> Result<bool> {
    Ok(topology.cluster(cluster)?.cache.contains(name))
}

/// Resolves a request by flooding: the serving cluster answers at hop 1 when
/// it caches the name itself; otherwise the nearest caching cluster answers at
/// `1 + graph distance`, ties broken by lowest cluster id. Names cached
/// nowhere reachable are reported as not found.
pub fn flood_resolve(topology: &ClusterTopology, request: &NdoRequest) -> Result<Resolution> {
    let serving = topology.cluster(request.serving_cluster)?;
    if serving.cache.contains(&request.name) {
        return Ok(Resolution {
            hops: 1,
            source_cluster: serving.id,
        });
    }
    let dist = topology.distances_from(request.serving_cluster);
    let mut best: Option<(usize, u32)> = None;
    for cluster in topology.clusters() {
        if !cluster.cache.contains(&request.name) {
            continue;
        }
        if let Some(&d) = dist.get(&cluster.id) {
            let candidate = (d, cluster.id);
            if best.map_or(true, |b| candidate < b) {
                best = Some(candidate);
            }
        }
    }
    match best {
        Some((d, id)) => Ok(Resolution {
            hops: 1 + d,
            source_cluster: id,
        }),
        None => Err(Error::ContentNotFound(request.name.clone())),
    }
}

/// Resolves a request the address-routed way: every request goes to the fixed
/// origin-server cluster, ignoring caches entirely. Hops are `1 + graph
/// distance` to the server.
pub fn ip_baseline_resolve(topology: &ClusterTopology, request: &NdoRequest) -> Result<Resolution> {
    let server = topology.origin_server.ok_or(Error::NoOriginServer)?;
    topology.cluster(request.serving_cluster)?;
    let dist = topology.distances_from(request.serving_cluster);
    match dist.get(&server) {
        Some(&d) => Ok(Resolution {
            hops: 1 + d,
            source_cluster: server,
        }),
        None => Err(Error::UnreachableCluster {
            from: request.serving_cluster,
            to: server,
        }),
    }
}

/// Fiber geometry of a path: `(hops - 1)` trunk segments of `hop_distance_km`
/// plus the serving tail. Hop counts start at 1.
pub fn path_length(hops: usize, hop_distance_km: f64, bs_tail_km: f64) -> Result<PathGeometry> {
    if hops < 1 {
        return Err(Error::InvalidHops(hops));
    }
    Ok(PathGeometry {
        trunk_km: (hops - 1) as f64 * hop_distance_km,
        tail_km: bs_tail_km,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn chain_with_cache(n: usize, entries: &[(u32, &str)]) -> ClusterTopology {
        let mut t = ClusterTopology::chain(n, 2, 100.0, 10.0, 20).unwrap();
        for &(id, name) in entries {
            t.add_cache_entry(id, name).unwrap();
        }
        t
    }

    #[test]
    fn chain_topology_shape() {
        let t = ClusterTopology::chain(4, 2, 100.0, 10.0, 20).unwrap();
        assert_eq!(t.clusters().len(), 4);
        assert_eq!(t.adjacency[&0], vec![1]);
        assert_eq!(t.adjacency[&1], vec![0, 2]);
        assert_eq!(t.adjacency[&3], vec![2]);
    }

    #[test]
    fn topology_rejects_malformed_input() {
        let dup = vec![Cluster::new(1, 2), Cluster::new(1, 2)];
        assert!(ClusterTopology::new(dup, &[], 100.0, 10.0, 20).is_err());
        let one = vec![Cluster::new(0, 2)];
        assert!(ClusterTopology::new(one.clone(), &[(0, 5)], 100.0, 10.0, 20).is_err());
        assert!(ClusterTopology::new(one.clone(), &[(0, 0)], 100.0, 10.0, 20).is_err());
        assert!(ClusterTopology::new(one, &[], 0.0, 10.0, 20).is_err());
        assert!(ClusterTopology::new(vec![], &[], 100.0, 10.0, 20).is_err());
    }

    #[test]
    fn cache_lookup_checks_one_cluster_only() {
        let t = chain_with_cache(3, &[(1, "movie")]);
        assert!(!cache_lookup(&t, 0, "movie").unwrap());
        assert!(cache_lookup(&t, 1, "movie").unwrap());
        assert!(!cache_lookup(&t, 1, "other").unwrap());
        assert!(matches!(cache_lookup(&t, 9, "movie"), Err(Error::UnknownCluster(9))));
    }

    #[test]
    fn flood_local_hit_is_one_hop() {
        let t = chain_with_cache(3, &[(0, "movie")]);
        let r = flood_resolve(
            &t,
            &NdoRequest { name: "movie".into(), serving_cluster: 0 },
        )
        .unwrap();
        assert_eq!(r, Resolution { hops: 1, source_cluster: 0 });
    }

    #[test]
    fn flood_finds_nearest_copy() {
        let t = chain_with_cache(5, &[(2, "movie"), (4, "movie")]);
        let r = flood_resolve(
            &t,
            &NdoRequest { name: "movie".into(), serving_cluster: 0 },
        )
        .unwrap();
        assert_eq!(r, Resolution { hops: 3, source_cluster: 2 });
    }

    #[test]
    fn flood_breaks_ties_by_lowest_id() {
        // Diamond: 0 connects to 1 and 2, both holding the name at distance 1.
        let clusters = vec![Cluster::new(0, 2), Cluster::new(1, 2), Cluster::new(2, 2)];
        let mut t =
            ClusterTopology::new(clusters, &[(0, 1), (0, 2)], 100.0, 10.0, 20).unwrap();
        t.add_cache_entry(1, "movie").unwrap();
        t.add_cache_entry(2, "movie").unwrap();
        let r = flood_resolve(
            &t,
            &NdoRequest { name: "movie".into(), serving_cluster: 0 },
        )
        .unwrap();
        assert_eq!(r.source_cluster, 1);
        assert_eq!(r.hops, 2);
    }

    #[test]
    fn flood_reports_uncached_content() {
        let t = chain_with_cache(3, &[(1, "movie")]);
        assert!(matches!(
            flood_resolve(&t, &NdoRequest { name: "nope".into(), serving_cluster: 0 }),
            Err(Error::ContentNotFound(_))
        ));
    }

    #[test]
    fn baseline_routes_to_server_ignoring_caches() {
        let t = chain_with_cache(5, &[(0, "movie")])
            .with_origin_server(3)
            .unwrap();
        let r = ip_baseline_resolve(
            &t,
            &NdoRequest { name: "movie".into(), serving_cluster: 0 },
        )
        .unwrap();
        // The local copy is ignored: 3 clusters away means 4 hops.
        assert_eq!(r, Resolution { hops: 4, source_cluster: 3 });
    }

    #[test]
    fn baseline_at_server_is_one_hop() {
        let t = chain_with_cache(3, &[]).with_origin_server(1).unwrap();
        let r = ip_baseline_resolve(
            &t,
            &NdoRequest { name: "x".into(), serving_cluster: 1 },
        )
        .unwrap();
        assert_eq!(r.hops, 1);
    }

    #[test]
    fn baseline_needs_a_designated_server() {
        let t = chain_with_cache(3, &[]);
        assert!(matches!(
            ip_baseline_resolve(&t, &NdoRequest { name: "x".into(), serving_cluster: 0 }),
            Err(Error::NoOriginServer)
        ));
    }

    #[test]
    fn path_length_examples() {
        let g = path_length(1, 100.0, 10.0).unwrap();
        assert_eq!((g.trunk_km, g.tail_km), (0.0, 10.0));
        let g = path_length(2, 100.0, 10.0).unwrap();
        assert_eq!(g.trunk_km, 100.0);
        assert!(matches!(path_length(0, 100.0, 10.0), Err(Error::InvalidHops(0))));
    }

    /// Seeded random topologies where the origin server holds a master copy of
    /// everything: flooding can only shorten the path, never lengthen it.
    #[test]
    fn flooding_never_beats_itself_with_extra_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(20_240_817);
        for _ in 0..50 {
            let n = rng.gen_range(2..12usize);
            let mut clusters: Vec<Cluster> = (0..n as u32).map(|i| Cluster::new(i, 2)).collect();
            // Random spanning tree keeps the graph connected, extra edges optional.
            let mut edges: Vec<(u32, u32)> = (1..n as u32)
                .map(|i| (rng.gen_range(0..i), i))
                .collect();
            for _ in 0..rng.gen_range(0..n) {
                let a = rng.gen_range(0..n as u32);
                let b = rng.gen_range(0..n as u32);
                if a != b {
                    edges.push((a.min(b), a.max(b)));
                }
            }
            let server = rng.gen_range(0..n as u32);
            let names = ["alpha", "beta", "gamma"];
            for c in &mut clusters {
                if c.id == server {
                    for name in names {
                        c.cache.insert(name.into());
                    }
                } else {
                    for name in names {
                        if rng.gen_bool(0.3) {
                            c.cache.insert(name.into());
                        }
                    }
                }
            }
            let t = ClusterTopology::new(clusters, &edges, 100.0, 10.0, 20)
                .unwrap()
                .with_origin_server(server)
                .unwrap();
            for _ in 0..8 {
                let req = NdoRequest {
                    name: names[rng.gen_range(0..names.len())].into(),
                    serving_cluster: rng.gen_range(0..n as u32),
                };
                let icn = flood_resolve(&t, &req).unwrap();
                let ip = ip_baseline_resolve(&t, &req).unwrap();
                assert!(
                    icn.hops <= ip.hops,
                    "flooding took {} hops but the baseline only {}",
                    icn.hops,
                    ip.hops
                );
            }
        }
    }
}
