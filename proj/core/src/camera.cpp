#include "cardbox/camera.hpp"

#include <stdexcept>

namespace cardbox {

Mat3 camera_axis_base() {
    return {{0, 1, 0,    // x_cam = +Y_w
             0, 0, -1,   // y_cam = -Z_w
             -1, 0, 0}};  // z_cam = -X_w
}

CameraModel::CameraModel(double fx, double fy, double cx, double cy, int width, int height,
                         RigidTransform world_to_camera)
    : fx_(fx), fy_(fy), cx_(cx), cy_(cy), width_(width), height_(height),
      world_to_camera_(world_to_camera) {
    if (fx <= 0.0 || fy <= 0.0) throw std::invalid_argument("focal lengths must be positive");
    if (width <= 0 || height <= 0) throw std::invalid_argument("image size must be positive");
    if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height)
        throw std::invalid_argument("principal point must lie inside the image");
}

CameraModel CameraModel::facing_origin(double fx, double fy, double cx, double cy, int width,
                                       int height, double distance_cm) {
    return from_pose_values(fx, fy, cx, cy, width, height, {0, 0, 0, distance_cm, 0, 0});
}

CameraModel CameraModel::from_pose_values(double fx, double fy, double cx, double cy, int width,
                                          int height, const std::array<double, 6>& pose) {
    const Mat3 r = rot_zyx(pose[2], pose[1], pose[0]) * camera_axis_base();
    const Vec3 position{pose[3], pose[4], pose[5]};
    // p_cam = R * (p_world - position)
    return CameraModel(fx, fy, cx, cy, width, height, {r, r * (position * -1.0)});
}

Vec2 project_point(const CameraModel& cam, const Vec3& world_point) {
    const Vec3 p = cam.to_camera(world_point);
    if (!(p.z > 0.0)) throw std::domain_error("point is behind the camera");
    return cam.project_camera_point(p);
}

}  // namespace cardbox
