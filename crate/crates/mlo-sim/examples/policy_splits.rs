//! Shows how each traffic-allocation policy splits one flow across the
//! links of a station whose bands are unevenly congested.
//!
//! Run with `cargo run --example policy_splits`.

use mlo_sim::policy::{allocate, LinkView, PolicyKind};

fn main() -> mlo_sim::Result<()> {
    // A three-link station: busy 2.4 GHz, moderately free 5 GHz, mostly
    // free 6 GHz. The station is attached (single-link setup) on 2.4 GHz.
    let links = [
        LinkView { link: 0, free_airtime: 0.10, rate_mbps: 243.8, attached: true },
        LinkView { link: 1, free_airtime: 0.55, rate_mbps: 487.5, attached: false },
        LinkView { link: 2, free_airtime: 0.90, rate_mbps: 1020.8, attached: false },
    ];
    let demand = 12.0;

    println!("splitting a {demand} Mbps flow over three links");
    println!("free airtime per link: 2.4 GHz 0.10, 5 GHz 0.55, 6 GHz 0.90\n");
    println!(
        "{:<10} {:>10} {:>10} {:>10}",
        "policy", "2.4 GHz", "5 GHz", "6 GHz"
    );
    for kind in PolicyKind::ALL {
        let shares = allocate(kind, demand, &links)?;
        println!(
            "{:<10} {:>10.3} {:>10.3} {:>10.3}",
            kind.name(),
            shares[0],
            shares[1],
            shares[2]
        );
        let total: f64 = shares.iter().sum();
        assert!((total - demand).abs() < 1e-9, "shares must conserve the demand");
    }

    println!("\nwith every band equally free the split-capable policies agree:");
    let even = [
        LinkView { link: 0, free_airtime: 0.5, rate_mbps: 243.8, attached: true },
        LinkView { link: 1, free_airtime: 0.5, rate_mbps: 487.5, attached: false },
    ];
    for kind in [PolicyKind::Mlsa, PolicyKind::Mcaa] {
        let shares = allocate(kind, demand, &even)?;
        println!("  {:<8} -> {:.3} / {:.3}", kind.name(), shares[0], shares[1]);
    }

    println!("\nand when every link is completely busy MCAA falls back to an equal split:");
    let jammed = [
        LinkView { link: 0, free_airtime: 0.0, rate_mbps: 243.8, attached: true },
        LinkView { link: 1, free_airtime: 0.0, rate_mbps: 487.5, attached: false },
        LinkView { link: 2, free_airtime: 0.0, rate_mbps: 1020.8, attached: false },
    ];
    let shares = allocate(PolicyKind::Mcaa, demand, &jammed)?;
    println!("  mcaa     -> {:.3} / {:.3} / {:.3}", shares[0], shares[1], shares[2]);
    Ok(())
}
