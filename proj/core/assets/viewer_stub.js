/* viewer bundle not linked; panels render as a static page */
