#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cmfts/errors.hpp"

namespace cmfts {

/// Per-dataset accuracies of a set of models. Rows are datasets, columns
/// are models; no missing cells.
struct ResultsTable {
    std::vector<std::string> datasets;
    std::vector<std::string> models;
    std::vector<std::vector<double>> accuracy;  // datasets x models
};

double accuracy(const std::vector<std::string>& predicted, const std::vector<std::string>& truth);

/// Mean rank per model, rank 1 = best accuracy, midranks on ties.
/// Accuracies are rounded to 6 decimals before comparison.
std::vector<double> average_ranks(const ResultsTable& table);

struct Wlt {
    std::size_t wins = 0, losses = 0, ties = 0;
};

/// Strictly-best model wins the dataset; a shared top counts as a tie for
/// every sharer and a loss for the rest.
std::vector<Wlt> wlt_ratio(const ResultsTable& table);

struct CdResult {
    std::vector<std::string> models;
    std::vector<double> avg_ranks;
    double friedman_stat = 0.0;
    double critical_difference = 0.0;
    double alpha = 0.05;
    std::vector<std::vector<std::string>> groups;  // maximal sets within the CD
};

/// Friedman statistic plus the Nemenyi critical difference and its group
/// structure. Requires k >= 3 models (ArityError) and alpha in the shipped
/// table {0.05, 0.10} with k <= 20 (UnsupportedAlpha).
CdResult friedman_nemenyi(const ResultsTable& table, double alpha = 0.05);

struct ImportanceReport {
    std::vector<std::string> features;
    std::vector<std::string> datasets;
    std::vector<std::vector<double>> matrix;  // datasets x features
    std::vector<double> mean;                 // per feature
    std::vector<std::size_t> dataset_order;   // ascending accumulated importance
};

ImportanceReport importance_report(const std::vector<std::string>& datasets,
                                   const std::vector<std::string>& features,
                                   const std::vector<std::vector<double>>& per_dataset);

/// Results CSV (`dataset,<model>,...`) with accuracies as decimals.
ResultsTable read_results_csv(const std::string& path);
void write_results_csv(const ResultsTable& table, const std::string& path);

/// Joins two tables over an identical dataset set (rows may be ordered
/// differently); model sets must be disjoint. Throws DatasetMismatch.
ResultsTable merge_results(const ResultsTable& own, const ResultsTable& external);

}  // namespace cmfts
