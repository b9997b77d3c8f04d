pub mod exact;
pub mod weights;
pub mod quatmoment;
pub mod zeroset;
pub mod strata;
pub mod report;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/moment.md")]
    mod moment {}
    #[doc = include_str!("../../../book/src/zeroset.md")]
    mod zeroset {}
    #[doc = include_str!("../../../book/src/strata.md")]
    mod strata {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
