//! Empirical lenses on a decomposition: bag-profile series, personalized
//! PageRank clusters and the network community profile, cluster
//! localization in the bags, and the frequent-bag community classifier.

mod community;
mod localize;
mod ncp;
mod ppr;
mod profiles;

pub use community::{frequent_bag_classifier, ClassifierResult, CommunityTable};
pub use localize::{localize, LocalizationReport, LocalizationRow};
pub use ncp::{
    default_ncp_seeds, ncp, size_bin, write_ncp_csv, write_ncp_members, NcpParams, DEFAULT_ALPHAS,
    DEFAULT_EPSILONS, DEFAULT_NCP_SEED_COUNT,
};
pub use ppr::{ppr_cluster, ppr_push, ppr_push_steps, sweep_cut, NCPPoint, PprVector, SweepResult};
pub use profiles::{bag_profiles, spearman, BagProfiles};
