#include "cardbox/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cardbox {

namespace {

// Clips a quad against z >= kNearPlaneDepth (Sutherland-Hodgman). A convex
// quad yields at most 5 vertices.
int clip_near(const std::array<Vec3, 4>& in, std::array<Vec3, 8>& out) {
    int n = 0;
    for (int i = 0; i < 4; ++i) {
        const Vec3& cur = in[i];
        const Vec3& nxt = in[(i + 1) & 3];
        const bool cur_in = cur.z >= kNearPlaneDepth;
        const bool nxt_in = nxt.z >= kNearPlaneDepth;
        if (cur_in) out[n++] = cur;
        if (cur_in != nxt_in) {
            const double t = (kNearPlaneDepth - cur.z) / (nxt.z - cur.z);
            out[n++] = cur + t * (nxt - cur);
        }
    }
    return n;
}

// First integer i with i + 0.5 >= bound. std::ceil(bound - 0.5) can be off
// by one when the subtraction rounds, so the result is corrected with exact
// pixel-center comparisons.
int first_center_at_or_after(double bound) {
    if (bound <= -1e9) return -1000000000;  // off-screen; callers clamp
    if (bound >= 1e9) return 1000000000;
    int i = static_cast<int>(std::ceil(bound - 0.5));
    while (i + 0.5 < bound) ++i;
    while (i - 1 + 0.5 >= bound) --i;
    return i;
}

// Scanline fill of one projected convex polygon. Crossings use the
// half-open edge rule (y0 <= yc < y1), paired left-to-right; pixels with
// centers in [enter, exit) are set. This matches a per-pixel crossing-count
// containment test bit for bit.
void fill_polygon(SilhouetteMask& mask, const Vec2* pts, int n) {
    double min_y = pts[0].y, max_y = pts[0].y;
    for (int i = 1; i < n; ++i) {
        min_y = std::min(min_y, pts[i].y);
        max_y = std::max(max_y, pts[i].y);
    }
    const int y_begin = std::max(first_center_at_or_after(min_y), 0);
    const int y_end = std::min(first_center_at_or_after(max_y), mask.height());

    double xs[8];
    for (int y = y_begin; y < y_end; ++y) {
        const double yc = y + 0.5;
        int m = 0;
        for (int i = 0; i < n; ++i) {
            const Vec2& p0 = pts[i];
            const Vec2& p1 = pts[(i + 1) % n];
            if ((p0.y <= yc && yc < p1.y) || (p1.y <= yc && yc < p0.y))
                xs[m++] = p0.x + (yc - p0.y) * (p1.x - p0.x) / (p1.y - p0.y);
        }
        std::sort(xs, xs + m);
        for (int i = 0; i + 1 < m; i += 2) {
            const int x_begin = std::max(first_center_at_or_after(xs[i]), 0);
            const int x_end = std::min(first_center_at_or_after(xs[i + 1]), mask.width());
            if (x_begin < x_end) mask.fill_span(y, x_begin, x_end);
        }
    }
}

}  // namespace

void rasterize_into(SilhouetteMask& mask, const CameraModel& cam,
                    std::span<const PatchQuad> quads) {
    if (mask.width() != cam.width() || mask.height() != cam.height())
        throw std::invalid_argument("mask size does not match camera");
    mask.clear();

    std::array<Vec3, 8> clipped;
    Vec2 projected[8];
    for (const PatchQuad& quad : quads) {
        std::array<Vec3, 4> cam_pts;
        for (int i = 0; i < 4; ++i) {
            if (!std::isfinite(quad[i].x) || !std::isfinite(quad[i].y) ||
                !std::isfinite(quad[i].z))
                throw std::invalid_argument("quad corner is not finite");
            cam_pts[i] = cam.to_camera(quad[i]);
        }
        const int n = clip_near(cam_pts, clipped);
        if (n < 3) continue;
        for (int i = 0; i < n; ++i) projected[i] = cam.project_camera_point(clipped[i]);
        fill_polygon(mask, projected, n);
    }
}

SilhouetteMask rasterize(const CameraModel& cam, std::span<const PatchQuad> quads) {
    SilhouetteMask mask(cam.width(), cam.height());
    rasterize_into(mask, cam, quads);
    return mask;
}

}  // namespace cardbox
