use std::fmt;

use serde::{Deserialize, Serialize};

/// Types of tactic-language values.
///
/// The functional types form a closed set. `QuotThmTacTac` types
/// `qpat_x_assum`; `ThmTacThmTac` only arises as the partial application
/// of a `QUOT_THMTAC_THM_TAC` or `QUOTLIST_THMTAC_THM_TAC` function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TacticType {
    Tac,
    Thm,
    ThmList,
    Quot,
    QuotList,
    ThmTac,
    ThmListTac,
    TacTac,
    QuotTac,
    ThmTacTac,
    TacTacTac,
    QuotThmTacThmTac,
    QuotListThmTacThmTac,
    QuotThmTacTac,
    ThmTacThmTac,
}

use TacticType::*;

impl TacticType {
    pub const ALL: [TacticType; 15] = [
        Tac,
        Thm,
        ThmList,
        Quot,
        QuotList,
        ThmTac,
        ThmListTac,
        TacTac,
        QuotTac,
        ThmTacTac,
        TacTacTac,
        QuotThmTacThmTac,
        QuotListThmTacThmTac,
        QuotThmTacTac,
        ThmTacThmTac,
    ];

    /// Domain and codomain of a function type.
    pub fn arrow(self) -> Option<(TacticType, TacticType)> {
        Some(match self {
            ThmTac => (Thm, Tac),
            ThmListTac => (ThmList, Tac),
            TacTac => (Tac, Tac),
            QuotTac => (Quot, Tac),
            ThmTacTac => (ThmTac, Tac),
            TacTacTac => (Tac, TacTac),
            QuotThmTacThmTac => (Quot, ThmTacThmTac),
            QuotListThmTacThmTac => (QuotList, ThmTacThmTac),
            QuotThmTacTac => (Quot, ThmTacTac),
            ThmTacThmTac => (ThmTac, ThmTac),
            Tac | Thm | ThmList | Quot | QuotList => return None,
        })
    }

    pub fn is_function(self) -> bool {
        self.arrow().is_some()
    }

    /// Short tag, e.g. `THMLIST_TAC`.
    pub fn tag(self) -> &'static str {
        match self {
            Tac => "TAC",
            Thm => "THM",
            ThmList => "THMLIST",
            Quot => "QUOT",
            QuotList => "QUOTLIST",
            ThmTac => "THM_TAC",
            ThmListTac => "THMLIST_TAC",
            TacTac => "TAC_TAC",
            QuotTac => "QUOT_TAC",
            ThmTacTac => "THMTAC_TAC",
            TacTacTac => "TAC_TAC_TAC",
            QuotThmTacThmTac => "QUOT_THMTAC_THM_TAC",
            QuotListThmTacThmTac => "QUOTLIST_THMTAC_THM_TAC",
            QuotThmTacTac => "QUOT_THMTAC_TAC",
            ThmTacThmTac => "THMTAC_THM_TAC",
        }
    }

    /// The ML-style signature, e.g. `thm list -> tactic`.
    pub fn signature(self) -> &'static str {
        match self {
            Tac => "tactic",
            Thm => "thm",
            ThmList => "thm list",
            Quot => "term quotation",
            QuotList => "term quotation list",
            ThmTac => "thm -> tactic",
            ThmListTac => "thm list -> tactic",
            TacTac => "tactic -> tactic",
            QuotTac => "term quotation -> tactic",
            ThmTacTac => "(thm -> tactic) -> tactic",
            TacTacTac => "tactic -> tactic -> tactic",
            QuotThmTacThmTac => "term quotation -> (thm -> tactic) -> thm -> tactic",
            QuotListThmTacThmTac => "term quotation list -> (thm -> tactic) -> thm -> tactic",
            QuotThmTacTac => "term quotation -> (thm -> tactic) -> tactic",
            ThmTacThmTac => "(thm -> tactic) -> thm -> tactic",
        }
    }

    pub fn from_tag(tag: &str) -> Option<TacticType> {
        TacticType::ALL.into_iter().find(|t| t.tag() == tag)
    }
}

impl fmt::Display for TacticType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}
