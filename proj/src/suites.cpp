#include "mhkit/suites.hpp"
