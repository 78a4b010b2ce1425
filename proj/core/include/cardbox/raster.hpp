#ifndef CARDBOX_RASTER_HPP_
#define CARDBOX_RASTER_HPP_

#include <span>

#include "cardbox/body_model.hpp"
#include "cardbox/camera.hpp"
#include "cardbox/mask.hpp"

namespace cardbox {

/// Geometry closer than this camera-frame depth is clipped before
/// projection (cm).
constexpr double kNearPlaneDepth = 1.0;

/// Renders the union of the projected quads into a binary mask. A pixel is
/// foreground iff its center lies inside at least one projected quad; pixel
/// centers sit at (x + 0.5, y + 0.5) and boundary pixels follow a half-open
/// [enter, exit) span rule in both axes, so the output is deterministic and
/// rasterizing quads separately and OR-ing is pixel-identical. Quads behind
/// the near plane are clipped; fully-behind quads contribute nothing.
SilhouetteMask rasterize(const CameraModel& cam, std::span<const PatchQuad> quads);

/// Same, into an existing mask of matching size (mask is cleared first).
void rasterize_into(SilhouetteMask& mask, const CameraModel& cam,
                    std::span<const PatchQuad> quads);

}  // namespace cardbox

#endif  // CARDBOX_RASTER_HPP_
