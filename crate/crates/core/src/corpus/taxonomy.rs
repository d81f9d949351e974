//! Fixed taxonomies of motivations for opening and closing wontfix issues.
//!
//! The motivation identifiers are frozen snake_case names shipped as a
//! versioned enumeration file (`data/taxonomy_v1.tsv`); a test asserts the
//! file and these enums stay in lockstep.

use serde::{Deserialize, Serialize};

/// The shipped version-1 taxonomy enumeration file.
pub const TAXONOMY_V1: &str = include_str!("../../data/taxonomy_v1.tsv");

/// High-level groups for opening motivations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpeningCategory {
    FunctionalAspects,
    Problem,
    Configuration,
    Documentation,
    Other,
}

/// High-level groups for closing motivations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosingCategory {
    FeatureRequestEnhancement,
    Change,
    NotABug,
    Bug,
    Other,
}

impl ClosingCategory {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClosingCategory::FeatureRequestEnhancement => "feature_request_enhancement",
            ClosingCategory::Change => "change",
            ClosingCategory::NotABug => "not_a_bug",
            ClosingCategory::Bug => "bug",
            ClosingCategory::Other => "other",
        }
    }
}

macro_rules! motivations {
    ($enum_name:ident, $cat_ty:ident, $all:ident; $($variant:ident => $id:literal, $cat:ident;)+) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $enum_name {
            $(#[serde(rename = $id)] $variant,)+
        }

        impl $enum_name {
            pub const $all: &'static [$enum_name] = &[$($enum_name::$variant,)+];

            pub fn id(&self) -> &'static str {
                match self {
                    $($enum_name::$variant => $id,)+
                }
            }

            pub fn category(&self) -> $cat_ty {
                match self {
                    $($enum_name::$variant => $cat_ty::$cat,)+
                }
            }

            pub fn from_id(id: &str) -> Option<$enum_name> {
                match id {
                    $($id => Some($enum_name::$variant),)+
                    _ => None,
                }
            }
        }
    };
}

motivations! {
    OpeningMotivation, OpeningCategory, ALL;
    FeatureEnhancement => "feature_enhancement", FunctionalAspects;
    ReportedABug => "reported_a_bug", FunctionalAspects;
    FeatureRequest => "feature_request", FunctionalAspects;
    UnexpectedUnclearFunctionalityBehaviour => "unexpected_unclear_functionality_behaviour", FunctionalAspects;
    UnknownCrash => "unknown_crash", FunctionalAspects;
    PerformanceIssue => "performance_issue", Problem;
    TestingRelatedIssue => "testing_related_issue", Problem;
    SecurityIssue => "security_issue", Problem;
    CompilationIssue => "compilation_issue", Problem;
    BrowserIssue => "browser_issue", Problem;
    PersistenceIssue => "persistence_issue", Problem;
    ToolVersionNoLongerSupported => "tool_version_no_longer_supported", Configuration;
    ConfigurationProblem => "configuration_problem", Configuration;
    BackupProblems => "backup_problems", Configuration;
    Question => "question", Documentation;
    RequestOfAddingAnExampleInTheDocumentation => "request_of_adding_an_example_in_the_documentation", Documentation;
    NotClearOrIncorrectCodeSoftwareExamples => "not_clear_or_incorrect_code_software_examples", Documentation;
    DevelopmentAspects => "development_aspects", Other;
    CommentOnTheSoftwareNotARealIssuePost => "comment_on_the_software_not_a_real_issue_post", Other;
    ImprovementOfGraphicalAspects => "improvement_of_graphical_aspects", Other;
    CurrentFeatureBeyondTheScopeOfTheLibrary => "current_feature_beyond_the_scope_of_the_library", Other;
    GeneralComment => "general_comment", Other;
}

motivations! {
    ClosingMotivation, ClosingCategory, ALL;
    FeatureRequestEnhancementAlreadyImplementedOrNotNeeded => "feature_request_enhancement_already_implemented_or_not_needed", FeatureRequestEnhancement;
    NotRelevantRequest => "not_relevant_request", FeatureRequestEnhancement;
    ItWasFixedInTheContextOfPreviousBugFixes => "it_was_fixed_in_the_context_of_previous_bug_fixes", FeatureRequestEnhancement;
    TooExpensiveFeatureRequest => "too_expensive_feature_request", FeatureRequestEnhancement;
    FeatureRequestThatWillBeImplementedInTheNearFuture => "feature_request_that_will_be_implemented_in_the_near_future", FeatureRequestEnhancement;
    AlreadyImplementedFeatureRequestByAnExternalContributorOfTheProject => "already_implemented_feature_request_by_an_external_contributor_of_the_project", FeatureRequestEnhancement;
    NotRelevantChange => "not_relevant_change", Change;
    NoTimeToWorkOnThisChange => "no_time_to_work_on_this_change", Change;
    RequestedChangeLeadingToFurtherProblems => "requested_change_leading_to_further_problems", Change;
    NotABug => "not_a_bug", NotABug;
    ConfigurationBackupProblemOnTheUserSide => "configuration_backup_problem_on_the_user_side", NotABug;
    DuplicatedIssue => "duplicated_issue", NotABug;
    UnclearWrongUsageOfAFunctionality => "unclear_wrong_usage_of_a_functionality", NotABug;
    ProblemAlreadyFixedWithTheNewVersion => "problem_already_fixed_with_the_new_version", NotABug;
    ProblemFixedUpdatingTheNewVersionOfADependentLibraryTool => "problem_fixed_updating_the_new_version_of_a_dependent_library_tool", NotABug;
    ToolVersionNoLongerSupported => "tool_version_no_longer_supported", NotABug;
    NotReplicableBug => "not_replicable_bug", NotABug;
    ImpossibleToFixTheIssueOrTooExpensiveChange => "impossible_to_fix_the_issue_or_too_expensive_change", Bug;
    NotACriticalBug => "not_a_critical_bug", Bug;
    ItWillBeFixedInFuture => "it_will_be_fixed_in_future", Bug;
    DifficultToFixOrToReplicate => "difficult_to_fix_or_to_replicate", Bug;
    UnknownCrash => "unknown_crash", Bug;
    GeneralCommentFromAUser => "general_comment_from_a_user", Other;
    ClosedByTheUser => "closed_by_the_user", Other;
    ItWasATestFailure => "it_was_a_test_failure", Other;
    UpdatedTheDocumentationOnWiki => "updated_the_documentation_on_wiki", Other;
}
