#ifndef CARDBOX_CAMERA_HPP_
#define CARDBOX_CAMERA_HPP_

#include "cardbox/geometry.hpp"

namespace cardbox {

/// 2D image point, sub-pixel units.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Pinhole camera with a rigid world-to-camera pose.
///
/// World axes follow the body convention: X points from the subject towards
/// the camera (opposite of the optical axis), Y is horizontal and parallel
/// to the image plane, Z completes the right-handed frame (up). Camera
/// frame is the usual computer-vision one: x right, y down, z along the
/// optical axis, so world +Y maps to image +x and world +Z to image -y.
class CameraModel {
public:
    CameraModel(double fx, double fy, double cx, double cy, int width, int height,
                RigidTransform world_to_camera);

    /// Camera on the world X axis at `distance_cm` from the origin, looking
    /// back at the origin with no roll.
    static CameraModel facing_origin(double fx, double fy, double cx, double cy, int width,
                                     int height, double distance_cm);

    /// Pose from 6 numbers: intrinsic Z-Y-X rotation (radians) applied in
    /// the camera frame on top of the axis-convention base orientation,
    /// plus the camera position in world coordinates (cm).
    static CameraModel from_pose_values(double fx, double fy, double cx, double cy, int width,
                                        int height, const std::array<double, 6>& pose);

    double fx() const { return fx_; }
    double fy() const { return fy_; }
    double cx() const { return cx_; }
    double cy() const { return cy_; }
    int width() const { return width_; }
    int height() const { return height_; }
    const RigidTransform& world_to_camera() const { return world_to_camera_; }

    Vec3 to_camera(const Vec3& world_point) const { return world_to_camera_.apply(world_point); }

    /// Perspective projection of a camera-frame point with positive depth.
    Vec2 project_camera_point(const Vec3& camera_point) const {
        return {cx_ + fx_ * camera_point.x / camera_point.z,
                cy_ + fy_ * camera_point.y / camera_point.z};
    }

private:
    double fx_, fy_, cx_, cy_;
    int width_, height_;
    RigidTransform world_to_camera_;
};

/// Base orientation mapping world axes to camera axes per the convention
/// above: x_cam = +Y_w, y_cam = -Z_w, z_cam = -X_w.
Mat3 camera_axis_base();

/// Projects a world point; throws std::domain_error if the point does not
/// lie strictly in front of the camera.
Vec2 project_point(const CameraModel& cam, const Vec3& world_point);

}  // namespace cardbox

#endif  // CARDBOX_CAMERA_HPP_
