//! Content resolution over the cluster graph: nearest-copy flooding against
//! the fixed origin-server baseline, including the lowest-id tie-break.
//!
//! Run with: `cargo run --example icn_resolution`

use ee_sim::config::TopologyConfig;
use ee_sim::icn::{
    flood_resolve, ip_baseline_resolve, path_length, Cluster, ClusterTopology, NdoRequest,
};

fn main() {
    // The default topology: nine clusters in a chain, cluster i caching
    // object-i, the origin server at the far end.
    let topology = TopologyConfig::default().build().expect("default topology builds");

    println!("chain of 9 clusters, origin server at cluster 8");
    println!();
    println!("{:<10} {:>8} {:>14} {:>14} {:>12}", "content", "from", "nearest hops", "origin hops",
             "trunk [km]");
    for (name, from) in [("object-0", 0u32), ("object-4", 0), ("object-4", 4), ("object-2", 6)] {
        let request = NdoRequest { name: name.into(), serving_cluster: from };
        let near = flood_resolve(&topology, &request).expect("cached somewhere");
        let origin = ip_baseline_resolve(&topology, &request).expect("server designated");
        let geometry = path_length(near.hops, topology.hop_distance_km, topology.bs_tail_km)
            .expect("hops start at 1");
        println!(
            "{name:<10} {from:>8} {:>14} {:>14} {:>12}",
            near.hops, origin.hops, geometry.trunk_km
        );
    }

    // Tie-break: two copies at the same distance resolve to the lower id.
    let clusters = vec![Cluster::new(0, 2), Cluster::new(1, 2), Cluster::new(2, 2)];
    let mut diamond = ClusterTopology::new(clusters, &[(0, 1), (0, 2)], 100.0, 10.0, 20)
        .expect("diamond builds");
    diamond.add_cache_entry(1, "movie").expect("cluster 1 exists");
    diamond.add_cache_entry(2, "movie").expect("cluster 2 exists");
    let r = flood_resolve(&diamond, &NdoRequest { name: "movie".into(), serving_cluster: 0 })
        .expect("both neighbours cache it");
    println!();
    println!(
        "tie-break: copies at clusters 1 and 2, both one hop away -> cluster {} answers",
        r.source_cluster
    );
}
