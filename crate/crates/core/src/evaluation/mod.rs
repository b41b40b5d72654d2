//! Model-selection criteria, goodness-of-fit statistics, TTT plot
//! coordinates, descriptive statistics and the embedded datasets.

mod criteria;
mod datasets;
mod describe;
mod gof;
mod ttt;

pub use criteria::{info_criteria, InfoCriteria};
pub use datasets::{Dataset, DatasetId};
pub use describe::{descriptive_stats, quantile_type7, Descriptive};
pub use gof::{
    ad_statistic, cvm_statistic, kolmogorov_sf, ks_statistic, modified_ad, modified_cvm, EdfVariant,
};
pub use ttt::ttt_coordinates;

use serde::Serialize;

use crate::error::Result;
use crate::estimation::loglik;
use crate::model::ModelInstance;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofReport {
    pub model_name: String,
    pub k: usize,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub caic: f64,
    pub hqic: f64,
    pub ks: f64,
    pub ks_pvalue: f64,
    pub ad: f64,
    pub cvm: f64,
    pub variant: EdfVariant,
}

/// Every criterion and EDF statistic for `model` on `data`.
pub fn gof_report(data: &[f64], model: &ModelInstance, variant: EdfVariant) -> Result<GofReport> {
    let k = model.params().len();
    let w = data.len();
    let ll = loglik(data, model)?;
    let ic = info_criteria(ll, k, w)?;
    let cdf = |x: f64| model.cdf(x);
    let (ks, ks_pvalue) = ks_statistic(data, cdf)?;
    let (mut ad, mut cvm) = (ad_statistic(data, cdf)?, cvm_statistic(data, cdf)?);
    if variant == EdfVariant::Modified {
        ad = modified_ad(ad, w);
        cvm = modified_cvm(cvm, w);
    }
    Ok(GofReport {
        model_name: model.kind().name().to_string(),
        k,
        loglik: ll,
        aic: ic.aic,
        bic: ic.bic,
        caic: ic.caic,
        hqic: ic.hqic,
        ks,
        ks_pvalue,
        ad,
        cvm,
        variant,
    })
}
