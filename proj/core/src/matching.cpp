#include "cardbox/matching.hpp"

namespace cardbox {

Cost silhouette_cost(const SilhouetteMask& model_mask, const SilhouetteMask& observed) {
    return xor_popcount(model_mask, observed);
}

CostEvaluator::CostEvaluator(const BodyModel& model, const CameraModel& cam)
    : model_(&model), cam_(&cam), scratch_(cam.width(), cam.height()) {}

Cost CostEvaluator::operator()(const PostureParams& posture, const SilhouetteMask& observed) {
    const PosedBody posed = forward_kinematics(*model_, posture);
    rasterize_into(scratch_, *cam_, posed.patches);
    return silhouette_cost(scratch_, observed);
}

Cost cost_of_posture(const BodyModel& model, const PostureParams& posture, const CameraModel& cam,
                     const SilhouetteMask& observed) {
    CostEvaluator eval(model, cam);
    return eval(posture, observed);
}

}  // namespace cardbox
