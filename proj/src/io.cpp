namespace kreinwave {}
