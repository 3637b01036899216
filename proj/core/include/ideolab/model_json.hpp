#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ideolab/adaboost.hpp"
#include "ideolab/forest.hpp"
#include "ideolab/linear.hpp"
#include "ideolab/ovr.hpp"
#include "ideolab/svc.hpp"
#include "ideolab/tree.hpp"
#include "ideolab/zeror.hpp"

namespace ideolab {

using AnyModel = std::variant<ZeroRModel, LogisticModel, MultinomialModel,
                              LinearSvcModel, TreeModel, ForestModel, AdaBoostModel,
                              OvrLogisticModel, OvrForestModel, OvrSvcModel>;

// Fitted model plus the class-name table mapping ids back to labels.
// class_names is sorted, so id order equals lexicographic name order.
struct SavedModel {
  AnyModel model;
  std::vector<std::string> class_names;
};

const char* model_kind(const AnyModel& m);
std::size_t model_feature_count(const AnyModel& m);  // 0 means any width

// Class-id predictions for each row.
std::vector<int> predict_any(const AnyModel& m, const DenseMatrix& x);
// Per-class score columns (probabilities, vote fractions, margins, or
// weighted votes depending on the kind); absent for the ZeroR baseline.
std::optional<DenseMatrix> scores_any(const AnyModel& m, const DenseMatrix& x);

// JSON container with the model kind, hyperparameters, and all floating
// payloads as hex-encoded f64, so serialization round-trips bit-exactly.
std::string model_to_json_text(const SavedModel& m);
SavedModel model_from_json_text(const std::string& text);
void save_model(const std::string& path, const SavedModel& m);
SavedModel load_model(const std::string& path);

}  // namespace ideolab
