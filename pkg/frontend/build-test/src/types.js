// Shapes of the /api/v1 responses the explorer consumes.
export {};
