#ifndef CARDBOX_MATCHING_HPP_
#define CARDBOX_MATCHING_HPP_

#include <cstdint>

#include "cardbox/body_model.hpp"
#include "cardbox/camera.hpp"
#include "cardbox/mask.hpp"
#include "cardbox/raster.hpp"

namespace cardbox {

/// Silhouette-matching cost: number of pixels where the rendered model and
/// the observed silhouette disagree.
using Cost = std::uint64_t;

/// XOR popcount between two equally sized masks.
Cost silhouette_cost(const SilhouetteMask& model_mask, const SilhouetteMask& observed);

/// Renders a posture through the model and camera and costs it against the
/// observation. This is the single evaluation path used by both the offline
/// initialization and the online tracker; the evaluator owns scratch
/// buffers so repeated evaluations do not allocate. One instance per thread.
class CostEvaluator {
public:
    CostEvaluator(const BodyModel& model, const CameraModel& cam);

    Cost operator()(const PostureParams& posture, const SilhouetteMask& observed);

    /// The rendered mask of the last evaluation (valid until the next call).
    const SilhouetteMask& last_render() const { return scratch_; }

private:
    const BodyModel* model_;
    const CameraModel* cam_;
    SilhouetteMask scratch_;
};

/// Convenience single-shot form.
Cost cost_of_posture(const BodyModel& model, const PostureParams& posture, const CameraModel& cam,
                     const SilhouetteMask& observed);

}  // namespace cardbox

#endif  // CARDBOX_MATCHING_HPP_
