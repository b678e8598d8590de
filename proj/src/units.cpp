#include "nvforge/units.hpp"

// Header-only; translation unit kept so the component has a home in the build.
